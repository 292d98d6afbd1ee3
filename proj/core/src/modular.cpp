#include "liecert/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace liecert {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

Residue inv_mod(Residue a, Residue p) { return static_cast<Residue>(pow_mod(a, p - 2, p)); }

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 61u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 7u, 61u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Residue PrimeSampler::next() {
  constexpr std::uint64_t lo = std::uint64_t{1} << 30;
  for (;;) {
    // Raw engine output keeps the sequence identical across standard libraries.
    std::uint64_t candidate = lo + (engine_() % lo);
    if (is_prime(candidate)) return static_cast<Residue>(candidate);
  }
}

std::optional<Residue> reduce(const Rational& q, Residue p) {
  const unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  const unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return static_cast<Residue>(mul_mod(num, inv_mod(static_cast<Residue>(den), p), p));
}

ModularEchelon::ModularEchelon(std::size_t cols, Residue p) : cols_(cols), p_(p) {
  if (p < 2) throw std::invalid_argument("ModularEchelon: modulus must be prime");
}

bool ModularEchelon::insert(const ModRow& row) {
  std::vector<Residue> v(cols_, 0);
  for (const auto& [c, x] : row) {
    if (c >= cols_) throw std::out_of_range("ModularEchelon::insert: column out of range");
    v[c] = static_cast<Residue>((v[c] + std::uint64_t{x}) % p_);
  }
  return insert_dense(v);
}

bool ModularEchelon::insert(std::span<const Residue> dense) {
  if (dense.size() != cols_) throw std::invalid_argument("ModularEchelon::insert: dimension mismatch");
  std::vector<Residue> v(dense.begin(), dense.end());
  for (auto& x : v) x %= p_;
  return insert_dense(v);
}

bool ModularEchelon::insert_dense(std::vector<Residue>& v) {
  if (rank() == cols_) return false;
  const std::uint64_t p = p_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t piv = pivots_[k];
    if (v[piv] == 0) continue;
    const std::uint64_t f = p - v[piv];
    const auto& r = rows_[k];
    for (std::size_t c = piv; c < cols_; ++c) {
      if (r[c] != 0) v[c] = static_cast<Residue>((v[c] + f * r[c]) % p);
    }
  }
  auto lead = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
  if (lead == v.end()) return false;
  const std::size_t piv = static_cast<std::size_t>(lead - v.begin());
  const std::uint64_t inv = inv_mod(v[piv], p_);
  for (std::size_t c = piv; c < cols_; ++c) {
    if (v[c] != 0) v[c] = static_cast<Residue>(v[c] * inv % p);
  }
  pivots_.push_back(piv);
  rows_.push_back(std::move(v));
  return true;
}

std::optional<std::size_t> modular_rank(const SparseMat& m, Residue p, const Deadline& deadline) {
  std::size_t total = 0;
  std::vector<std::size_t> local(m.cols(), 0);
  for (const auto& comp : connected_components(m)) {
    for (std::size_t k = 0; k < comp.cols.size(); ++k) local[comp.cols[k]] = k;
    ModularEchelon ech(comp.cols.size(), p);
    std::size_t counter = 0;
    for (std::size_t r : comp.rows) {
      if ((++counter & 63) == 0) deadline.check();
      ModRow row;
      row.reserve(m.row(r).size());
      for (const auto& e : m.row(r)) {
        auto x = reduce(e.value, p);
        if (!x) return std::nullopt;
        if (*x != 0) row.emplace_back(local[e.index], *x);
      }
      ech.insert(row);
      if (ech.rank() == comp.cols.size()) break;
    }
    total += ech.rank();
  }
  return total;
}

std::size_t CertifiedNullity::successes() const {
  return static_cast<std::size_t>(std::count_if(attempts.begin(), attempts.end(), [&](const PrimeAttempt& a) {
    return a.rank && *a.rank == target_rank;
  }));
}

CertifiedNullity certify_nullity(const SparseMat& m, const Subspace& known_kernel, std::span<const Residue> primes,
                                 std::uint64_t resample_seed, const Deadline& deadline) {
  if (known_kernel.ambient_dim() != m.cols())
    throw std::invalid_argument("certify_nullity: known kernel lives in the wrong space");
  for (const auto& v : known_kernel.basis()) {
    if (!is_zero(m.apply(v))) throw std::invalid_argument("certify_nullity: known kernel is not in the kernel");
  }
  CertifiedNullity out;
  out.known_dim = known_kernel.dim();
  out.target_rank = m.cols() - known_kernel.dim();

  PrimeSampler replacements(resample_seed);
  for (Residue p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("certify_nullity: " + std::to_string(p) + " is not prime");
    std::optional<std::size_t> r = modular_rank(m, p, deadline);
    while (!r) {
      out.attempts.push_back({p, std::nullopt});
      p = replacements.next();
      r = modular_rank(m, p, deadline);
    }
    out.attempts.push_back({p, r});
    if (*r > out.target_rank) throw std::logic_error("certify_nullity: modular rank exceeds rational bound");
  }
  out.certified = out.successes() > 0;
  return out;
}

CertifiedNullity certify_nullity(const SparseMat& m, const Subspace& known_kernel, std::uint64_t seed,
                                 std::size_t count, const Deadline& deadline) {
  PrimeSampler sampler(seed);
  std::vector<Residue> primes;
  for (std::size_t k = 0; k < count; ++k) primes.push_back(sampler.next());
  return certify_nullity(m, known_kernel, primes, seed ^ 0x9e3779b97f4a7c15ULL, deadline);
}

}  // namespace liecert
