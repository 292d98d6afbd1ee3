#include "liecert/orbit.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace liecert {

namespace {

Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

const std::array<Rational, 8>& parameter_pool() {
  static const std::array<Rational, 8> pool = {frac(1, 1), frac(-1, 1), frac(2, 1), frac(-2, 1),
                                               frac(1, 2), frac(-1, 2), frac(1, 3), frac(-1, 3)};
  return pool;
}

Element theta_vector(const LieAlgebra& L) {
  return L.basis_vector(L.root_basis_index(L.root_system().size() - 1));
}

/// Sparse accumulator keyed by coordinate.
class Accum {
 public:
  void add(std::size_t i, const Rational& v) {
    if (sgn(v) == 0) return;
    auto [it, inserted] = map_.try_emplace(i, v);
    if (!inserted) it->second += v;
  }
  SparseVec take() {
    SparseVec out;
    out.reserve(map_.size());
    for (auto& [i, v] : map_)
      if (sgn(v) != 0) out.push_back({i, std::move(v)});
    map_.clear();
    return out;
  }

 private:
  std::map<std::size_t, Rational> map_;
};

/// z ^ w in wedge2 coordinates.
SparseVec wedge(const TensorIndex& w2, std::span<const Rational> z, const SparseVec& w) {
  Accum acc;
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (sgn(z[a]) == 0) continue;
    for (const auto& e : w) {
      if (e.index == a) continue;
      const Rational v = z[a] * e.value;
      if (a < e.index)
        acc.add(w2.pair(a, e.index), v);
      else
        acc.add(w2.pair(e.index, a), -v);
    }
  }
  return acc.take();
}

/// Rows expressing sigma(z, w) in V for each w in `directions`, in
/// Hom(wedge2 g, g) coordinates: the coefficient of every non-pivot coordinate
/// m of V after reduction against V's basis must vanish.
void emit_containment_rows(std::size_t n, const TensorIndex& w2, std::span<const Rational> z,
                           const std::vector<SparseVec>& directions, const Subspace& V,
                           ConstraintAccumulator& acc) {
  std::vector<bool> is_pivot(n, false);
  for (const auto& r : V.basis()) is_pivot[r.front().index] = true;
  // reduce[m]: (pivot, b_r[m]) for the basis rows with a nonzero entry at m
  std::vector<std::vector<std::pair<std::size_t, Rational>>> reduce(n);
  for (const auto& r : V.basis())
    for (const auto& e : r)
      if (!is_pivot[e.index]) reduce[e.index].push_back({r.front().index, e.value});

  for (const auto& w : directions) {
    const SparseVec omega = wedge(w2, z, w);
    for (std::size_t m = 0; m < n; ++m) {
      if (is_pivot[m]) continue;
      SparseVec row;
      row.reserve(omega.size() * (1 + reduce[m].size()));
      std::vector<SparseEntry> local;
      for (const auto& o : omega) {
        local.clear();
        local.push_back({o.index * n + m, o.value});
        for (const auto& [piv, b] : reduce[m]) local.push_back({o.index * n + piv, -o.value * b});
        std::sort(local.begin(), local.end(),
                  [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
        for (auto& e : local) row.push_back(std::move(e));
      }
      acc.add_row(row);
    }
  }
}

/// Sampling loop shared by the subspace searches.
struct StabilizeHooks {
  std::function<void(const OrbitSample&, ConstraintAccumulator&)> emit;
  /// Optional exact certificate tried when a batch did not lower the dimension.
  std::function<bool(ConstraintAccumulator&)> certify_stalled;
};

void stabilize(const LieAlgebra& L, const StabilizationConfig& config, ConstraintAccumulator& acc,
               const StabilizeHooks& hooks, SampledSpace& out, const Deadline& deadline) {
  std::size_t stalled = 0;
  out.confidence = Confidence::unresolved;
  for (std::size_t batch = 0; batch < config.max_batches; ++batch) {
    const auto samples = sample_orbit(L, config.batch_size, config.seed, batch * config.batch_size, config.word_length);
    for (const auto& s : samples) {
      deadline.check();
      hooks.emit(s, acc);
      ++out.samples_used;
    }
    const std::size_t dim = acc.kernel_dim();
    const bool dropped = out.dims_per_batch.empty() || dim < out.dims_per_batch.back();
    out.dims_per_batch.push_back(dim);
    if (acc.at_lower_bound()) {
      out.confidence = Confidence::certified;
      out.certified_by = "lower_bound";
      break;
    }
    if (dropped) {
      stalled = 0;
      continue;
    }
    ++stalled;
    if (hooks.certify_stalled && hooks.certify_stalled(acc)) {
      out.confidence = Confidence::certified;
      out.certified_by = "invariance";
      break;
    }
    if (stalled >= config.plateau_batches) {
      out.confidence = Confidence::plateau;
      break;
    }
  }
  out.kernel_dim = acc.kernel_dim();
  out.rows_added = acc.rows_added();
  out.denominator_skips = acc.denominator_skips();
}

Subspace line(std::size_t n, std::span<const Rational> z) {
  return Subspace::span(n, std::vector<Vector>{Vector(z.begin(), z.end())});
}

SampledSpace hom_condition_space(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                                 const Subspace* lower_bound, Residue prime, bool to_line, const Budget& budget,
                                 const Deadline& deadline) {
  const std::size_t n = L.dim();
  const auto w2 = TensorIndex::wedge2(n);
  const std::size_t N = w2.total_dim() * n;
  require_dense_footprint(budget, N, N, to_line ? "Xi' constraint system" : "Xi constraint system");
  const TensorRepresentation rep(L, TensorRepresentation::Kind::hom_wedge2);

  if (lower_bound != nullptr) {
    if (lower_bound->ambient_dim() != N) throw std::invalid_argument("lower bound has the wrong ambient dimension");
    // Invariance plus the condition at x_theta proves containment on the whole orbit.
    if (!is_invariant(rep, *lower_bound, deadline) || !satisfies_at_base(L, *lower_bound, to_line))
      throw std::invalid_argument("lower bound is not contained in the solution space");
  }

  SampledSpace out;
  out.arithmetic = arithmetic;
  out.prime = arithmetic == Arithmetic::modular ? prime : 0;
  out.ambient_dim = N;
  ConstraintAccumulator acc(weight_blocks(rep.weights(), config.split_by_weight), arithmetic, prime);
  if (lower_bound != nullptr) acc.set_lower_bound(*lower_bound);

  bool consistent = true;
  std::size_t checked = 0;
  StabilizeHooks hooks;
  hooks.emit = [&](const OrbitSample& s, ConstraintAccumulator& a) {
    const Subspace target = to_line ? line(n, s.point) : s.tangent;
    emit_containment_rows(n, w2, s.point, s.tangent.basis(), target, a);
    // Modular rows cannot be replayed against the lower bound, so check it
    // directly on the first batch.
    if (lower_bound != nullptr && arithmetic == Arithmetic::modular && checked < config.batch_size) {
      ++checked;
      for (const auto& sigma : lower_bound->basis()) {
        for (const auto& w : s.tangent.basis()) {
          const Vector wd = densify(w, n);
          if (!target.contains(std::span<const Rational>(evaluate_hom(L, sigma, s.point, wd)))) consistent = false;
        }
      }
    }
  };
  if (arithmetic == Arithmetic::exact) {
    hooks.certify_stalled = [&](ConstraintAccumulator& a) {
      const Subspace k = a.kernel();
      return is_invariant(rep, k, deadline) && satisfies_at_base(L, k, to_line);
    };
  }
  stabilize(L, config, acc, hooks, out, deadline);

  if (arithmetic == Arithmetic::exact) {
    out.space = acc.kernel();
    if (lower_bound != nullptr) out.lower_bound_consistent = out.space->contains(*lower_bound);
  } else {
    if (lower_bound != nullptr) out.lower_bound_consistent = consistent;
    if (out.confidence == Confidence::certified && lower_bound != nullptr) out.space = *lower_bound;
  }
  if (lower_bound != nullptr && out.kernel_dim < lower_bound->dim())
    throw std::logic_error("sampled kernel is smaller than a proven subspace");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampling

Element exp_ad_root(const LieAlgebra& L, std::size_t root, const Rational& t, const Element& v) {
  const SparseVec x = {{L.root_basis_index(root), Rational(1)}};
  SparseVec term = sparsify(v);
  SparseVec result = term;
  for (long k = 1; !term.empty(); ++k) {
    term = L.bracket(x, term);
    const Rational c = t / Rational(k);
    for (auto& e : term) e.value *= c;
    result = axpy(result, Rational(1), term);
    if (k > 8) throw std::logic_error("exp_ad_root: ad x is not nilpotent of small order");
  }
  return densify(result, L.dim());
}

Element apply_word(const LieAlgebra& L, const std::vector<WordLetter>& word, Element v) {
  for (const auto& letter : word) v = exp_ad_root(L, letter.root, letter.t, v);
  return v;
}

OrbitSample make_sample(const LieAlgebra& L, std::vector<WordLetter> word) {
  OrbitSample s;
  s.point = apply_word(L, word, theta_vector(L));
  s.word = std::move(word);
  const DenseMat ad = L.ad_matrix(s.point);
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < L.dim(); ++j) cols.push_back(ad.column(j));
  s.tangent = Subspace::span(L.dim(), cols);
  std::vector<bool> is_pivot(L.dim(), false);
  for (std::size_t p : s.tangent.pivots()) is_pivot[p] = true;
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (!is_pivot[i]) s.complement.push_back(i);
  return s;
}

std::size_t default_word_length(const LieAlgebra& L) {
  return L.root_system().size() / 2 + 2 * L.rank();
}

std::vector<OrbitSample> sample_orbit(const LieAlgebra& L, std::size_t count, std::uint64_t seed,
                                      std::size_t first_index, std::size_t word_length) {
  const auto& rs = L.root_system();
  const std::size_t ell = L.rank();
  if (word_length == 0) word_length = default_word_length(L);
  std::vector<OrbitSample> out;
  out.reserve(count);
  for (std::size_t k = first_index; k < first_index + count; ++k) {
    const std::uint64_t kk = k;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kk), static_cast<std::uint32_t>(kk >> 32)};
    std::mt19937_64 engine(seq);
    std::vector<WordLetter> word;
    // Lowering prefix, then 2 * rank letters of either sign.
    const std::size_t prefix = word_length > 2 * ell ? word_length - 2 * ell : 0;
    for (std::size_t i = 0; i < word_length; ++i) {
      const std::size_t g = i < prefix ? ell + engine() % ell : engine() % (2 * ell);
      const std::size_t simple = rs.simple_root_index(static_cast<int>(g % ell));
      const std::size_t root = g < ell ? simple : rs.negative_index(simple);
      word.push_back({root, parameter_pool()[engine() % 8]});
    }
    out.push_back(make_sample(L, std::move(word)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Representations

TensorRepresentation::TensorRepresentation(const LieAlgebra& L, Kind kind)
    : L_(&L), kind_(kind), n_(L.dim()), dim_(0), w2_(TensorIndex::wedge2(L.dim())), s2_(TensorIndex::sym2(L.dim())) {
  switch (kind) {
    case Kind::wedge2:
      dim_ = w2_.total_dim();
      break;
    case Kind::sym2_dual:
      dim_ = s2_.total_dim();
      break;
    case Kind::hom_wedge2:
      dim_ = w2_.total_dim() * n_;
      break;
  }
  adjacency_.assign(n_, std::vector<std::vector<std::pair<std::size_t, Rational>>>(n_));
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t u = 0; u < n_; ++u)
      for (const auto& e : L.structure(x, u)) adjacency_[x][e.index].push_back({u, e.value});
}

SparseVec TensorRepresentation::act(std::size_t x, const SparseVec& v) const {
  const LieAlgebra& L = *L_;
  Accum acc;
  // Ordered pair (s, t) of wedge2, folded onto s < t with the sign.
  auto add_wedge = [&](std::size_t s, std::size_t t, std::size_t k, std::size_t stride, const Rational& val) {
    if (s == t) return;
    if (s < t)
      acc.add(w2_.pair(s, t) * stride + k, val);
    else
      acc.add(w2_.pair(t, s) * stride + k, -val);
  };
  switch (kind_) {
    case Kind::wedge2:
      for (const auto& e : v) {
        const auto ab = w2_.multi(e.index);
        for (const auto& c : L.structure(x, ab[0])) add_wedge(c.index, ab[1], 0, 1, c.value * e.value);
        for (const auto& c : L.structure(x, ab[1])) add_wedge(ab[0], c.index, 0, 1, c.value * e.value);
      }
      break;
    case Kind::sym2_dual: {
      // -(A^T Q + Q A) with A = ad_{e_x}, read off on i <= j.
      auto add_sym = [&](std::size_t i, std::size_t j, const Rational& val) {
        if (i <= j) acc.add(s2_.pair(i, j), -val);
      };
      for (const auto& e : v) {
        const auto ij = s2_.multi(e.index);
        const std::size_t i = ij[0], j = ij[1];
        // stored entries Q(i, j) and Q(j, i)
        for (int pass = 0; pass < (i == j ? 1 : 2); ++pass) {
          const std::size_t r = pass == 0 ? i : j;
          const std::size_t c = pass == 0 ? j : i;
          for (const auto& [u, a] : adjacency_[x][r]) add_sym(u, c, a * e.value);
          for (const auto& [u, a] : adjacency_[x][c]) add_sym(r, u, e.value * a);
        }
      }
      break;
    }
    case Kind::hom_wedge2:
      for (const auto& e : v) {
        const std::size_t p = e.index / n_;
        const std::size_t k = e.index % n_;
        const auto ab = w2_.multi(p);
        for (const auto& c : L.structure(x, k)) acc.add(p * n_ + c.index, c.value * e.value);
        for (const auto& [u, a] : adjacency_[x][ab[0]]) add_wedge(u, ab[1], k, n_, -a * e.value);
        for (const auto& [u, a] : adjacency_[x][ab[1]]) add_wedge(u, ab[0], k, n_, a * e.value);
      }
      break;
  }
  return acc.take();
}

std::vector<RootVec> TensorRepresentation::weights() const {
  const LieAlgebra& L = *L_;
  std::vector<RootVec> w(n_);
  for (std::size_t i = 0; i < n_; ++i) w[i] = L.weight(i);
  auto combine = [](const RootVec& a, int sa, const RootVec& b, int sb, const RootVec& c, int sc) {
    RootVec out(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) out[r] = sa * a[r] + sb * b[r] + sc * c[r];
    return out;
  };
  std::vector<RootVec> out;
  out.reserve(dim_);
  const RootVec zero(L.rank(), 0);
  for (std::size_t idx = 0; idx < dim_; ++idx) {
    switch (kind_) {
      case Kind::wedge2: {
        const auto ab = w2_.multi(idx);
        out.push_back(combine(w[ab[0]], 1, w[ab[1]], 1, zero, 0));
        break;
      }
      case Kind::sym2_dual: {
        const auto ij = s2_.multi(idx);
        out.push_back(combine(w[ij[0]], -1, w[ij[1]], -1, zero, 0));
        break;
      }
      case Kind::hom_wedge2: {
        const auto ab = w2_.multi(idx / n_);
        out.push_back(combine(w[idx % n_], 1, w[ab[0]], -1, w[ab[1]], -1));
        break;
      }
    }
  }
  return out;
}

std::vector<std::size_t> TensorRepresentation::raising() const {
  std::vector<std::size_t> out;
  for (int i = 0; i < L_->root_system().rank(); ++i)
    out.push_back(L_->root_basis_index(L_->root_system().simple_root_index(i)));
  return out;
}

std::vector<std::size_t> TensorRepresentation::lowering() const {
  const auto& rs = L_->root_system();
  std::vector<std::size_t> out;
  for (int i = 0; i < rs.rank(); ++i) out.push_back(L_->root_basis_index(rs.negative_index(rs.simple_root_index(i))));
  return out;
}

bool is_invariant(const TensorRepresentation& rep, const Subspace& module, const Deadline& deadline) {
  if (module.ambient_dim() != rep.dim()) throw std::invalid_argument("is_invariant: dimension mismatch");
  std::vector<std::size_t> gens = rep.raising();
  for (std::size_t g : rep.lowering()) gens.push_back(g);
  for (std::size_t g : gens) {
    for (const auto& b : module.basis()) {
      deadline.check();
      if (!module.contains(rep.act(g, b))) return false;
    }
  }
  return true;
}

std::size_t count_summands(const TensorRepresentation& rep, const Subspace& module, const Deadline& deadline) {
  if (!is_invariant(rep, module, deadline)) throw std::invalid_argument("count_summands: subspace is not invariant");
  const auto gens = rep.raising();
  const std::size_t dim = module.dim();
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (auto& e : rep.act(gens[g], module.basis()[r])) t.push_back({g * rep.dim() + e.index, r, std::move(e.value)});
    }
  }
  const SparseMat m(gens.size() * rep.dim(), dim, std::move(t));
  return dim - rank(m, deadline);
}

std::vector<std::size_t> weight_blocks(const std::vector<RootVec>& weights, bool split) {
  std::vector<std::size_t> out(weights.size(), 0);
  if (!split) return out;
  std::map<RootVec, std::size_t> ids;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(weights[i], ids.size());
    out[i] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ConstraintAccumulator

ConstraintAccumulator::ConstraintAccumulator(std::vector<std::size_t> column_block, Arithmetic arithmetic,
                                             Residue prime)
    : column_block_(std::move(column_block)), local_(column_block_.size()), arithmetic_(arithmetic), prime_(prime) {
  if (arithmetic == Arithmetic::modular && !is_prime(prime))
    throw std::invalid_argument("ConstraintAccumulator: modular arithmetic needs a prime");
  std::size_t count = 0;
  for (std::size_t b : column_block_) count = std::max(count, b + 1);
  blocks_.resize(count);
  for (std::size_t c = 0; c < column_block_.size(); ++c) {
    auto& blk = blocks_[column_block_[c]];
    local_[c] = blk.cols.size();
    blk.cols.push_back(c);
  }
  for (auto& blk : blocks_) {
    if (arithmetic == Arithmetic::exact)
      blk.exact.emplace(blk.cols.size());
    else
      blk.modular.emplace(blk.cols.size(), prime);
    blk.target = blk.cols.size();
  }
  mod_scratch_.resize(count);
  exact_scratch_.resize(count);
}

void ConstraintAccumulator::set_lower_bound(const Subspace& lower_bound) {
  if (lower_bound.ambient_dim() != ambient_dim())
    throw std::invalid_argument("ConstraintAccumulator::set_lower_bound: dimension mismatch");
  has_lower_bound_ = true;
  lower_bound_dim_ = lower_bound.dim();
  std::vector<std::size_t> per_block(blocks_.size(), 0);
  for (const auto& row : lower_bound.basis()) {
    const std::size_t b = column_block_[row.front().index];
    for (const auto& e : row)
      if (column_block_[e.index] != b) return;  // not weight-homogeneous: keep full targets
    ++per_block[b];
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b].target = blocks_[b].cols.size() - per_block[b];
}

void ConstraintAccumulator::add_row(const SparseVec& row) {
  ++rows_added_;
  if (arithmetic_ == Arithmetic::modular) {
    ModRow m;
    m.reserve(row.size());
    for (const auto& e : row) {
      const auto r = reduce(e.value, prime_);
      if (!r) {
        ++denominator_skips_;
        return;
      }
      if (*r != 0) m.push_back({e.index, *r});
    }
    --rows_added_;
    add_row(m);
    return;
  }
  for (const auto& e : row) {
    const std::size_t b = column_block_[e.index];
    if (blocks_[b].rank() >= blocks_[b].target) continue;
    if (exact_scratch_[b].empty()) touched_.push_back(b);
    exact_scratch_[b].push_back({local_[e.index], e.value});
  }
  for (std::size_t b : touched_) {
    blocks_[b].exact->insert(exact_scratch_[b]);
    exact_scratch_[b].clear();
  }
  touched_.clear();
}

void ConstraintAccumulator::add_row(const ModRow& row) {
  if (arithmetic_ != Arithmetic::modular) throw std::logic_error("ConstraintAccumulator: modular row in exact mode");
  ++rows_added_;
  for (const auto& [c, r] : row) {
    if (r == 0) continue;
    const std::size_t b = column_block_[c];
    if (blocks_[b].rank() >= blocks_[b].target) continue;
    if (mod_scratch_[b].empty()) touched_.push_back(b);
    mod_scratch_[b].push_back({local_[c], r});
  }
  for (std::size_t b : touched_) {
    blocks_[b].modular->insert(mod_scratch_[b]);
    mod_scratch_[b].clear();
  }
  touched_.clear();
}

std::size_t ConstraintAccumulator::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks_) r += b.rank();
  return r;
}

bool ConstraintAccumulator::at_lower_bound() const { return has_lower_bound_ && kernel_dim() <= lower_bound_dim_; }

Subspace ConstraintAccumulator::kernel() const {
  if (arithmetic_ != Arithmetic::exact) throw std::logic_error("ConstraintAccumulator::kernel needs exact arithmetic");
  std::vector<SparseVec> rows;
  for (const auto& blk : blocks_) {
    const Subspace null = blk.exact->null_space();
    for (auto v : null.basis()) {
      for (auto& e : v) e.index = blk.cols[e.index];
      rows.push_back(std::move(v));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) { return a[0].index < b[0].index; });
  return Subspace::from_reduced(ambient_dim(), std::move(rows));
}

std::string to_string(Confidence c) {
  switch (c) {
    case Confidence::certified:
      return "certified";
    case Confidence::plateau:
      return "plateau";
    case Confidence::unresolved:
      return "unresolved";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Subspaces cut out on the orbit

Element evaluate_hom(const LieAlgebra& L, const SparseVec& sigma, std::span<const Rational> z,
                     std::span<const Rational> w) {
  const std::size_t n = L.dim();
  const auto w2 = TensorIndex::wedge2(n);
  Element out(n);
  for (const auto& e : sigma) {
    const auto ab = w2.multi(e.index / n);
    const Rational coef = z[ab[0]] * w[ab[1]] - z[ab[1]] * w[ab[0]];
    if (sgn(coef) != 0) out[e.index % n] += coef * e.value;
  }
  return out;
}

bool satisfies_at_base(const LieAlgebra& L, const Subspace& space, bool to_line) {
  const std::size_t n = L.dim();
  const OrbitSample base = make_sample(L, {});
  const Subspace target = to_line ? line(n, base.point) : base.tangent;
  for (const auto& sigma : space.basis()) {
    for (const auto& w : base.tangent.basis()) {
      const Vector wd = densify(w, n);
      if (!target.contains(std::span<const Rational>(evaluate_hom(L, sigma, base.point, wd)))) return false;
    }
  }
  return true;
}

SampledSpace xi_space(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                      const Subspace* lower_bound, Residue prime, const Budget& budget, const Deadline& deadline) {
  return hom_condition_space(L, config, arithmetic, lower_bound, prime, false, budget, deadline);
}

SampledSpace xi_prime_space(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                            Residue prime, const Budget& budget, const Deadline& deadline) {
  const std::size_t n = L.dim();
  const Subspace bracket = Subspace::span(TensorIndex::wedge2(n).total_dim() * n, std::vector<Vector>{bracket_hom(L)});
  return hom_condition_space(L, config, arithmetic, &bracket, prime, true, budget, deadline);
}

DenseMat quadric_matrix(std::size_t n, const SparseVec& q) {
  const auto s2 = TensorIndex::sym2(n);
  DenseMat m(n, n);
  for (const auto& e : q) {
    const auto ij = s2.multi(e.index);
    m(ij[0], ij[1]) = e.value;
    m(ij[1], ij[0]) = e.value;
  }
  return m;
}

Rational evaluate_quadric(const SparseVec& q, std::span<const Rational> z) {
  const auto s2 = TensorIndex::sym2(z.size());
  Rational out;
  for (const auto& e : q) {
    const auto ij = s2.multi(e.index);
    const Rational t = e.value * z[ij[0]] * z[ij[1]];
    out += ij[0] == ij[1] ? t : t * 2;
  }
  return out;
}

SampledSpace sigma_quadrics(const LieAlgebra& L, const StabilizationConfig& config, const Budget& budget,
                            const Deadline& deadline) {
  const std::size_t n = L.dim();
  const auto s2 = TensorIndex::sym2(n);
  const std::size_t N = s2.total_dim();
  require_dense_footprint(budget, N, N, "quadric constraint system");
  const TensorRepresentation rep(L, TensorRepresentation::Kind::sym2_dual);

  SampledSpace out;
  out.arithmetic = Arithmetic::exact;
  out.ambient_dim = N;
  ConstraintAccumulator acc(weight_blocks(rep.weights(), config.split_by_weight), Arithmetic::exact);
  StabilizeHooks hooks;
  // q(z, w) = 0 for w in T_z: the polarized quadric vanishes along the
  // tangent directions of the cone (w = z gives q(z) itself up to scale).
  hooks.emit = [&](const OrbitSample& s, ConstraintAccumulator& a) {
    const auto& z = s.point;
    for (const auto& w : s.tangent.basis()) {
      Accum row;
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(z[i]) == 0) continue;
        for (const auto& e : w) {
          const Rational v = z[i] * e.value;
          if (i == e.index)
            row.add(s2.pair(i, i), v);
          else
            row.add(i < e.index ? s2.pair(i, e.index) : s2.pair(e.index, i), v);
        }
      }
      a.add_row(row.take());
    }
  };
  const Element theta = theta_vector(L);
  hooks.certify_stalled = [&](ConstraintAccumulator& a) {
    const Subspace k = a.kernel();
    for (const auto& q : k.basis())
      if (sgn(evaluate_quadric(q, theta)) != 0) return false;
    return is_invariant(rep, k, deadline);
  };
  stabilize(L, config, acc, hooks, out, deadline);
  out.space = acc.kernel();
  return out;
}

Subspace build_S(const LieAlgebra& L, const Subspace& sigma) {
  const std::size_t n = L.dim();
  const std::size_t slots = n + 1;
  const std::size_t N = n * slots;
  std::vector<SparseVec> id_part, ad_part, flat_part;
  for (std::size_t i = 0; i < n; ++i) id_part.push_back({{i * slots + n, Rational(1)}});
  for (std::size_t m = 0; m < n; ++m) {
    Accum v;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : L.structure(m, i)) v.add(i * slots + e.index, e.value);
    ad_part.push_back(v.take());
  }
  for (const auto& q : sigma.basis()) {
    const DenseMat F = L.flat(quadric_matrix(n, q));
    Accum v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) v.add(i * slots + c, F(c, i));
    flat_part.push_back(v.take());
  }
  const Subspace a = Subspace::span(N, id_part);
  const Subspace b = Subspace::span(N, ad_part);
  const Subspace c = Subspace::span(N, flat_part);
  Subspace s = sum(sum(a, b), c);
  if (a.dim() != n || b.dim() != n || c.dim() != sigma.dim() || s.dim() != a.dim() + b.dim() + c.dim())
    throw std::logic_error("build_S: the summands are not independent");
  return s;
}

Subspace spencer_image(const LieAlgebra& L, const Subspace& S) {
  const SparseMat d = spencer_matrix(L, Codomain::hat);
  if (S.ambient_dim() != d.cols()) throw std::invalid_argument("spencer_image: dimension mismatch");
  std::vector<Vector> imgs;
  for (const auto& v : S.basis()) imgs.push_back(d.apply(v));
  return Subspace::span(d.rows(), imgs);
}

SpanResult tangent_lines_span(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                              Residue prime, const Deadline& deadline) {
  const std::size_t n = L.dim();
  const auto w2 = TensorIndex::wedge2(n);
  const TensorRepresentation rep(L, TensorRepresentation::Kind::wedge2);
  ConstraintAccumulator acc(weight_blocks(rep.weights(), config.split_by_weight), arithmetic, prime);
  acc.set_lower_bound(Subspace(w2.total_dim()));
  SpanResult out;
  out.full = w2.total_dim();
  for (std::size_t batch = 0; batch < config.max_batches && !acc.at_lower_bound(); ++batch) {
    for (const auto& s : sample_orbit(L, config.batch_size, config.seed, batch * config.batch_size, config.word_length)) {
      deadline.check();
      for (const auto& w : s.tangent.basis()) acc.add_row(wedge(w2, s.point, w));
      ++out.samples_used;
    }
    out.dims_per_batch.push_back(acc.rank());
  }
  out.achieved = acc.rank();
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise structure at sampled points

bool GuReport::all_passed() const {
  return base_tangent_matches_grading && base_dhat_matches_grading &&
         std::all_of(samples.begin(), samples.end(), [](const GuSampleResult& s) { return s.all(); });
}

namespace {

/// {v in T : [v, z] = 0}
Subspace centralizer_in(const LieAlgebra& L, const Subspace& T, std::span<const Rational> z) {
  const std::size_t n = L.dim();
  const SparseVec zs = sparsify(z);
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < T.dim(); ++r)
    for (auto& e : L.bracket(T.basis()[r], zs)) t.push_back({e.index, r, std::move(e.value)});
  const Subspace coeffs = kernel(SparseMat(n, T.dim(), std::move(t)));
  std::vector<SparseVec> vecs;
  for (const auto& c : coeffs.basis()) {
    SparseVec v;
    for (const auto& e : c) v = axpy(v, e.value, T.basis()[e.index]);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(n, vecs);
}

}  // namespace

GuReport gu_pointwise_checks(const LieAlgebra& L, const ContactGrading& cg, const std::vector<OrbitSample>& samples,
                             const Deadline& deadline) {
  const std::size_t n = L.dim();
  GuReport report;
  const OrbitSample base = make_sample(L, {});
  const Subspace g21 = sum(cg.levels.at(2), cg.levels.at(1));
  const Subspace expected_T = sum(g21, line(n, cg.E));
  report.base_tangent_matches_grading = base.tangent == expected_T;
  report.base_dhat_matches_grading = centralizer_in(L, base.tangent, base.point) == g21;

  for (const auto& s : samples) {
    deadline.check();
    GuSampleResult r;
    const auto& T = s.tangent;
    const Subspace zline = line(n, s.point);
    r.tangent_dim = T.dim();

    std::vector<Vector> moved;
    for (const auto& b : base.tangent.basis()) moved.push_back(apply_word(L, s.word, densify(b, n)));
    r.tangent_is_translate = Subspace::span(n, moved) == T;

    const SparseVec zs = sparsify(s.point);
    r.bracket_into_line = std::all_of(T.basis().begin(), T.basis().end(),
                                      [&](const SparseVec& b) { return zline.contains(L.bracket(b, zs)); });

    const Subspace perp = orthogonal_complement(T, L.killing_gram());
    bool ok = true;
    for (const auto& p : perp.basis())
      for (const auto& b : T.basis()) ok = ok && T.contains(L.bracket(p, b));
    r.perp_preserves_tangent = ok;

    const Subspace dhat = centralizer_in(L, T, s.point);
    r.dhat_dim = dhat.dim();
    bool commutes = dhat.dim() + 1 == T.dim();
    for (const auto& d : dhat.basis()) commutes = commutes && L.bracket(zs, d).empty();
    r.dhat_commutes = commutes;
    report.samples.push_back(r);
  }
  return report;
}

}  // namespace liecert
