#include "liecert/liealg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace liecert {

namespace {

Rational frac(long num, long den);

RootVec add(const RootVec& a, const RootVec& b) {
  RootVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

RootVec sub(const RootVec& a, const RootVec& b) {
  RootVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] - b[i];
  return s;
}

// Largest k such that b - k a is a root.
int string_below(const RootSystem& rs, const RootVec& a, const RootVec& b) {
  int k = 0;
  RootVec v = sub(b, a);
  while (rs.index_of(v)) {
    ++k;
    v = sub(v, a);
  }
  return k;
}

// Structure constants N_{a,b} for [x_a, x_b] = N_{a,b} x_{a+b}.
class StructureConstants {
 public:
  explicit StructureConstants(const RootSystem& rs) : rs_(rs), r_(rs.size()), pos_(r_ * r_, 0), known_(r_ * r_, 0) {
    const auto& roots = rs.roots();
    for (std::size_t xi = r_ / 2; xi < r_; ++xi) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;  // a < b, a + b = xi
      for (std::size_t a = r_ / 2; a < xi; ++a) {
        auto b = rs.index_of(sub(roots[xi], roots[a]));
        if (b && rs.is_positive(*b) && a < *b) pairs.emplace_back(a, *b);
      }
      if (pairs.empty()) continue;
      // pairs are sorted by their first entry, so the extraspecial pair leads.
      const auto [zeta, eta] = pairs.front();
      set(zeta, eta, string_below(rs, roots[zeta], roots[eta]) + 1);
      const int n_ze = pos_[zeta * r_ + eta];
      const int xi_sq = sq(xi);
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        const auto [a, b] = pairs[k];
        const std::size_t mzeta = rs.negative_index(zeta);
        const std::size_t meta = rs.negative_index(eta);
        Rational bracket_sum;
        if (auto d = rs.index_of(sub(roots[b], roots[zeta]))) {
          bracket_sum += frac(N(b, mzeta) * N(a, meta), sq(*d));
        }
        if (auto d = rs.index_of(sub(roots[a], roots[zeta]))) {
          bracket_sum += frac(N(mzeta, a) * N(b, meta), sq(*d));
        }
        const Rational value = frac(xi_sq, n_ze) * bracket_sum;
        if (value.get_den() != 1) throw std::logic_error("chevalley: non-integral structure constant");
        const int v = static_cast<int>(value.get_num().get_si());
        if (std::abs(v) != string_below(rs, roots[a], roots[b]) + 1)
          throw std::logic_error("chevalley: structure constant violates |N| = p + 1");
        set(a, b, v);
      }
    }
  }

  int N(std::size_t a, std::size_t b) const {
    const auto& roots = rs_.roots();
    auto s = rs_.index_of(add(roots[a], roots[b]));
    if (!s) return 0;
    const bool pa = rs_.is_positive(a);
    const bool pb = rs_.is_positive(b);
    if (pa && pb) {
      if (!known_[a * r_ + b]) throw std::logic_error("chevalley: structure constant used before it was fixed");
      return pos_[a * r_ + b];
    }
    if (!pa && !pb) return -N(rs_.negative_index(a), rs_.negative_index(b));
    // a + b + g = 0: N_{a,b}/(g,g) = N_{b,g}/(a,a) = N_{g,a}/(b,b).
    const std::size_t g = rs_.negative_index(*s);
    if (pa == rs_.is_positive(g)) return exact_div(sq(g) * N(g, a), sq(b));
    return exact_div(sq(g) * N(b, g), sq(a));
  }

 private:
  int sq(std::size_t a) const { return rs_.inner(rs_.roots()[a], rs_.roots()[a]); }

  static int exact_div(int num, int den) {
    if (num % den != 0) throw std::logic_error("chevalley: non-integral structure constant");
    return num / den;
  }

  void set(std::size_t a, std::size_t b, int v) {
    pos_[a * r_ + b] = v;
    pos_[b * r_ + a] = -v;
    known_[a * r_ + b] = known_[b * r_ + a] = 1;
  }

  const RootSystem& rs_;
  std::size_t r_;
  std::vector<int> pos_;
  std::vector<char> known_;
};

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

const Rational* coefficient(const SparseVec& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  if (it == v.end() || it->index != index) return nullptr;
  return &it->value;
}

}  // namespace

LieAlgebra LieAlgebra::chevalley(const RootSystem& rs) {
  const std::size_t l = static_cast<std::size_t>(rs.rank());
  const std::size_t R = rs.size();
  const std::size_t n = l + R;
  const auto& roots = rs.roots();
  StructureConstants sc(rs);

  std::vector<SparseVec> table(n * n);
  auto put = [&](std::size_t i, std::size_t j, SparseVec v) {
    SparseVec neg = v;
    for (auto& e : neg) e.value = -e.value;
    table[i * n + j] = std::move(v);
    table[j * n + i] = std::move(neg);
  };

  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t a = 0; a < R; ++a) {
      const int c = pairing(rs, roots[a], roots[rs.simple_root_index(static_cast<int>(i))]);
      if (c != 0) put(i, l + a, {{l + a, Rational(c)}});
    }
  }
  for (std::size_t a = 0; a < R; ++a) {
    for (std::size_t b = a + 1; b < R; ++b) {
      RootVec s = add(roots[a], roots[b]);
      if (std::all_of(s.begin(), s.end(), [](int c) { return c == 0; })) {
        // [x_a, x_-a] = coroot of a = sum_i c_i (alpha_i, alpha_i)/(a, a) h_i.
        const int aa = rs.inner(roots[a], roots[a]);
        SparseVec h;
        for (std::size_t i = 0; i < l; ++i) {
          if (roots[a][i] == 0) continue;
          h.push_back({i, frac(roots[a][i] * rs.length_squares()[i], aa)});
        }
        put(l + a, l + b, std::move(h));
      } else if (auto t = rs.index_of(s)) {
        const int v = sc.N(a, b);
        if (std::abs(v) != string_below(rs, roots[a], roots[b]) + 1)
          throw std::logic_error("chevalley: structure constant violates |N| = p + 1");
        put(l + a, l + b, {{l + *t, Rational(v)}});
      }
    }
  }
  return LieAlgebra(rs, std::move(table));
}

LieAlgebra LieAlgebra::from_structure(const RootSystem& rs, std::vector<SparseVec> table) {
  const std::size_t n = static_cast<std::size_t>(rs.rank()) + rs.size();
  if (table.size() != n * n) throw std::invalid_argument("from_structure: table size does not match the type");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec neg = table[j * n + i];
      for (auto& e : neg) e.value = -e.value;
      if (table[i * n + j] != neg) throw std::invalid_argument("from_structure: table is not antisymmetric");
      for (const auto& e : table[i * n + j])
        if (e.index >= n) throw std::invalid_argument("from_structure: index out of range");
    }
  }
  return LieAlgebra(rs, std::move(table));
}

LieAlgebra::LieAlgebra(const RootSystem& rs, std::vector<SparseVec> table)
    : rs_(rs), n_(static_cast<std::size_t>(rs.rank()) + rs.size()), table_(std::move(table)), gram_(n_, n_) {
  // B(e_i, e_j) = sum_k sum_l c^l_{jk} c^k_{il}; zero unless weights cancel.
  for (std::size_t i = 0; i < n_; ++i) {
    const RootVec wi = weight(i);
    for (std::size_t j = i; j < n_; ++j) {
      const RootVec wj = weight(j);
      bool opposite = true;
      for (std::size_t t = 0; t < wi.size(); ++t) opposite = opposite && wi[t] + wj[t] == 0;
      if (!opposite) continue;
      Rational acc;
      for (std::size_t k = 0; k < n_; ++k) {
        for (const auto& e : structure(j, k)) {
          if (const Rational* c = coefficient(structure(i, e.index), k)) acc += e.value * *c;
        }
      }
      gram_(i, j) = acc;
      gram_(j, i) = acc;
    }
  }
  auto inv = inverse(gram_);
  if (!inv) throw std::logic_error("Killing form is degenerate");
  gram_inv_ = std::move(*inv);
}

std::optional<std::size_t> LieAlgebra::root_of(std::size_t basis_index) const {
  if (basis_index < rank()) return std::nullopt;
  return basis_index - rank();
}

RootVec LieAlgebra::weight(std::size_t basis_index) const {
  if (auto r = root_of(basis_index)) return rs_.roots()[*r];
  return RootVec(rank(), 0);
}

std::string LieAlgebra::label(std::size_t basis_index) const {
  if (basis_index < rank()) return "h" + std::to_string(basis_index + 1);
  std::string s = "x(";
  const auto& r = rs_.roots().at(basis_index - rank());
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

Element LieAlgebra::basis_vector(std::size_t i) const {
  Element e(n_);
  e.at(i) = 1;
  return e;
}

Element LieAlgebra::bracket(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("bracket: dimension mismatch");
  Element out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational c = x[i] * y[j];
      for (const auto& e : structure(i, j)) out[e.index] += c * e.value;
    }
  }
  return out;
}

SparseVec LieAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  Element out(n_);
  for (const auto& a : x) {
    for (const auto& b : y) {
      const Rational c = a.value * b.value;
      for (const auto& e : structure(a.index, b.index)) out[e.index] += c * e.value;
    }
  }
  return sparsify(out);
}

DenseMat LieAlgebra::ad_matrix(std::span<const Rational> x) const {
  if (x.size() != n_) throw std::invalid_argument("ad_matrix: dimension mismatch");
  DenseMat m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      for (const auto& e : structure(i, j)) m(e.index, j) += x[i] * e.value;
    }
  }
  return m;
}

SparseMat LieAlgebra::ad_basis(std::size_t i) const {
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < n_; ++j) {
    for (const auto& e : structure(i, j)) t.push_back({e.index, j, e.value});
  }
  return {n_, n_, std::move(t)};
}

Rational LieAlgebra::killing_form(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("killing_form: dimension mismatch");
  return dot(sparsify(x), gram_.apply(y));
}

DenseMat LieAlgebra::flat(const DenseMat& b) const { return gram_inv_ * b; }

}  // namespace liecert
