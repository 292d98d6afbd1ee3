#include "liecert/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace liecert {

TensorIndex::TensorIndex(Kind kind, std::size_t a, std::size_t b) : kind_(kind), n_(a), m_(b), total_(0) {
  switch (kind) {
    case Kind::wedge2:
      for (std::size_t i = 0; i < n_; ++i) {
        offset_.push_back(total_);
        total_ += n_ - 1 - i;
      }
      break;
    case Kind::sym2:
      for (std::size_t i = 0; i < n_; ++i) {
        offset_.push_back(total_);
        total_ += n_ - i;
      }
      break;
    case Kind::wedge3:
      for (std::size_t i = 0; i < n_; ++i) {
        offset_.push_back(total_);
        const std::size_t rest = n_ - 1 - i;
        total_ += rest * (rest > 0 ? rest - 1 : 0) / 2;
      }
      break;
    case Kind::hom:
      total_ = n_ * m_;
      break;
  }
}

TensorIndex TensorIndex::wedge2(std::size_t n) { return {Kind::wedge2, n, 0}; }
TensorIndex TensorIndex::wedge3(std::size_t n) { return {Kind::wedge3, n, 0}; }
TensorIndex TensorIndex::sym2(std::size_t n) { return {Kind::sym2, n, 0}; }
TensorIndex TensorIndex::hom(std::size_t domain_dim, std::size_t codomain_dim) {
  return {Kind::hom, domain_dim, codomain_dim};
}

std::size_t TensorIndex::pair(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case Kind::wedge2:
      if (!(i < j && j < n_)) throw std::out_of_range("TensorIndex::pair: need i < j < n");
      return offset_[i] + (j - i - 1);
    case Kind::sym2:
      if (!(i <= j && j < n_)) throw std::out_of_range("TensorIndex::pair: need i <= j < n");
      return offset_[i] + (j - i);
    case Kind::hom:
      if (!(i < n_ && j < m_)) throw std::out_of_range("TensorIndex::pair: hom index out of range");
      return i * m_ + j;
    default:
      throw std::logic_error("TensorIndex::pair on a wedge3 index");
  }
}

std::size_t TensorIndex::triple(std::size_t i, std::size_t j, std::size_t k) const {
  if (kind_ != Kind::wedge3) throw std::logic_error("TensorIndex::triple on a non-wedge3 index");
  if (!(i < j && j < k && k < n_)) throw std::out_of_range("TensorIndex::triple: need i < j < k < n");
  const std::size_t m = n_ - i - 1;
  const std::size_t a = j - i - 1;
  const std::size_t b = k - i - 1;
  return offset_[i] + a * (2 * m - a - 1) / 2 + (b - a - 1);
}

std::vector<std::size_t> TensorIndex::multi(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("TensorIndex::multi: index out of range");
  if (kind_ == Kind::hom) return {index / m_, index % m_};
  // Last first-index whose offset does not exceed index (skipping empty ranges).
  auto it = std::upper_bound(offset_.begin(), offset_.end(), index);
  std::size_t i = static_cast<std::size_t>(it - offset_.begin()) - 1;
  std::size_t rest = index - offset_[i];
  if (kind_ == Kind::wedge2) return {i, i + 1 + rest};
  if (kind_ == Kind::sym2) return {i, i + rest};
  const std::size_t m = n_ - i - 1;
  std::size_t a = 0;
  while (rest >= m - a - 1) {
    rest -= m - a - 1;
    ++a;
  }
  return {i, i + 1 + a, i + 1 + a + 1 + rest};
}

SparseVec HatAlgebra::act(std::size_t slot, std::size_t m) const {
  if (slot == id_slot()) return {{m, Rational(1)}};
  return L_->structure(slot, m);
}

DenseMat HatAlgebra::evaluate(std::span<const Rational> coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("HatAlgebra::evaluate: dimension mismatch");
  DenseMat m = L_->ad_matrix(coords.first(L_->dim()));
  for (std::size_t i = 0; i < L_->dim(); ++i) m(i, i) += coords[id_slot()];
  return m;
}

SparseMat spencer_matrix(const LieAlgebra& L, Codomain cod) {
  const std::size_t n = L.dim();
  const HatAlgebra hat(L);
  const std::size_t slots = cod == Codomain::hat ? n + 1 : n;
  const auto w2 = TensorIndex::wedge2(n);
  SparseMatBuilder b(w2.total_dim() * n, n * slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < slots; ++c) {
      const std::size_t col = i * slots + c;
      // h = E_{i,c}: dh(e_i, e_j) = h(e_i) e_j, dh(e_j, e_i) = -h(e_i) e_j.
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const std::size_t p = i < j ? w2.pair(i, j) : w2.pair(j, i);
        const int sign = i < j ? 1 : -1;
        for (const auto& e : hat.act(c, j)) b.add(p * n + e.index, col, sign * e.value);
      }
    }
  }
  return std::move(b).build();
}

std::uint64_t bianchi_rows(std::size_t n) {
  const std::uint64_t N = n;
  return N < 3 ? 0 : N * (N - 1) * (N - 2) / 6 * N;
}

std::uint64_t bianchi_cols(std::size_t n) {
  const std::uint64_t N = n;
  return N * (N - 1) / 2 * (N + 1);
}

SparseMat bianchi_matrix(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const HatAlgebra hat(L);
  const auto w2 = TensorIndex::wedge2(n);
  const auto w3 = TensorIndex::wedge3(n);
  SparseMatBuilder b(w3.total_dim() * n, w2.total_dim() * (n + 1));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t bb = a + 1; bb < n; ++bb) {
      const std::size_t p = w2.pair(a, bb);
      for (std::size_t c = 0; c <= n; ++c) {
        const std::size_t col = p * (n + 1) + c;
        // For the triple {a, bb, m} sorted as (i, j, k):
        //   h#(e_i, e_j, e_k) = h(ij) e_k + h(jk) e_i - h(ik) e_j.
        for (std::size_t m = 0; m < n; ++m) {
          if (m == a || m == bb) continue;
          std::size_t t;
          int sign;
          if (m > bb) {
            t = w3.triple(a, bb, m);
            sign = 1;
          } else if (m > a) {
            t = w3.triple(a, m, bb);
            sign = -1;
          } else {
            t = w3.triple(m, a, bb);
            sign = 1;
          }
          for (const auto& e : hat.act(c, m)) b.add(t * n + e.index, col, sign * e.value);
        }
      }
    }
  }
  return std::move(b).build();
}

Vector bracket_element(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const auto w2 = TensorIndex::wedge2(n);
  Vector v(w2.total_dim() * (n + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& e : L.structure(i, j)) v[w2.pair(i, j) * (n + 1) + e.index] = e.value;
  return v;
}

Vector bracket_hom(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const auto w2 = TensorIndex::wedge2(n);
  Vector v(w2.total_dim() * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& e : L.structure(i, j)) v[w2.pair(i, j) * n + e.index] = e.value;
  return v;
}

std::optional<Rational> proportionality(const SparseVec& v, const SparseVec& w) {
  if (w.empty()) throw std::invalid_argument("proportionality: reference vector is zero");
  if (v.size() != w.size()) return std::nullopt;
  const Rational s = v.front().value / w.front().value;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].index != w[k].index || v[k].value != s * w[k].value) return std::nullopt;
  }
  return s;
}

CurvatureResult formal_curvature_space(const LieAlgebra& L, SolveMode mode, const Budget& budget,
                                       const PrimePolicy& primes, const Deadline& deadline) {
  const std::size_t n = L.dim();
  CurvatureResult out;
  out.rows = bianchi_rows(n);
  out.cols = bianchi_cols(n);
  require_dense_footprint(budget, out.rows, out.cols, "Bianchi matrix");
  if (mode == SolveMode::automatic) mode = n <= 14 ? SolveMode::exact : SolveMode::modular;
  out.mode = mode;

  const SparseMat m = bianchi_matrix(L);
  deadline.check();
  const SparseVec bracket = sparsify(bracket_element(L));
  if (mode == SolveMode::exact) {
    out.kernel = kernel(m, deadline);
    if (out.kernel->dim() == 1) out.scale = proportionality(out.kernel->basis().front(), bracket);
  } else {
    const Subspace known = Subspace::span(m.cols(), std::vector<SparseVec>{bracket});
    out.nullity = certify_nullity(m, known, primes.seed, primes.count, deadline);
  }
  return out;
}

}  // namespace liecert
