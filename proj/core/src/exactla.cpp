#include "liecert/exactla.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace liecert {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

const Rational* find_entry(const SparseVec& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  if (it == v.end() || it->index != index) return nullptr;
  return &it->value;
}

// Merge per-component reduced bases with pairwise disjoint supports. The
// union is already reduced; only the pivot order needs restoring.
std::vector<SparseVec> merge_by_pivot(std::vector<SparseVec> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SparseVec& a, const SparseVec& b) { return a.front().index < b.front().index; });
  return rows;
}

}  // namespace

SparseVec sparsify(std::span<const Rational> dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (sgn(dense[i]) != 0) out.push_back({i, dense[i]});
  }
  return out;
}

Vector densify(const SparseVec& v, std::size_t dim) {
  Vector out(dim);
  for (const auto& e : v) {
    if (e.index >= dim) throw std::out_of_range("densify: index out of range");
    out[e.index] = e.value;
  }
  return out;
}

Rational dot(const SparseVec& a, std::span<const Rational> b) {
  Rational acc;
  for (const auto& e : a) acc += e.value * b[e.index];
  return acc;
}

SparseVec axpy(const SparseVec& a, const Rational& s, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].index < a[i].index) {
      Rational v = s * b[j].value;
      if (sgn(v) != 0) out.push_back({b[j].index, std::move(v)});
      ++j;
    } else {
      Rational v = a[i].value + s * b[j].value;
      if (sgn(v) != 0) out.push_back({a[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

// ---------------------------------------------------------------------------
// SparseMat

SparseMatBuilder::SparseMatBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

void SparseMatBuilder::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatBuilder::add: index out of range");
  if (sgn(value) != 0) entries_.push_back({row, col, value});
}

SparseMat SparseMatBuilder::build() && {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (auto& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return sgn(t.value) == 0; });
  return SparseMat(rows_, cols_, std::move(merged));
}

SparseMat::SparseMat(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("SparseMat: index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_start_.assign(rows + 1, 0);
  entries_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col)
      throw std::invalid_argument("SparseMat: duplicate entry");
    if (sgn(entries[k].value) == 0) continue;
    ++row_start_[entries[k].row + 1];
    entries_.push_back({entries[k].col, std::move(entries[k].value)});
  }
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
}

SparseMat SparseMat::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, Rational(1)});
  return {n, n, std::move(t)};
}

std::span<const SparseEntry> SparseMat::row(std::size_t r) const {
  return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
}

std::vector<Triplet> SparseMat::triplets() const {
  std::vector<Triplet> out;
  out.reserve(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) out.push_back({r, e.index, e.value});
  }
  return out;
}

Vector SparseMat::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("SparseMat::apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) out[r] += e.value * v[e.index];
  }
  return out;
}

Vector SparseMat::apply(const SparseVec& v) const {
  Vector dense(cols_);
  for (const auto& e : v) {
    if (e.index >= cols_) throw std::invalid_argument("SparseMat::apply: dimension mismatch");
    dense[e.index] = e.value;
  }
  return apply(dense);
}

SparseMat SparseMat::transposed() const {
  std::vector<Triplet> t;
  t.reserve(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) t.push_back({e.index, r, e.value});
  }
  return {cols_, rows_, std::move(t)};
}

// ---------------------------------------------------------------------------
// DenseMat

DenseMat DenseMat::identity(std::size_t n) {
  DenseMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector DenseMat::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vector DenseMat::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("DenseMat::apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0) out[r] += a * v[c];
    }
  }
  return out;
}

DenseMat DenseMat::transposed() const {
  DenseMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Rational DenseMat::trace() const {
  Rational acc;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
  return acc;
}

bool DenseMat::is_zero() const { return liecert::is_zero(data_); }

SparseMat DenseMat::to_sparse() const {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0) t.push_back({r, c, (*this)(r, c)});
  return {rows_, cols_, std::move(t)};
}

DenseMat operator*(const DenseMat& a, const DenseMat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMat product: dimension mismatch");
  DenseMat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (sgn(bkj) != 0) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

DenseMat operator+(const DenseMat& a, const DenseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMat sum: shape mismatch");
  DenseMat out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

DenseMat operator-(const DenseMat& a, const DenseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMat difference: shape mismatch");
  DenseMat out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

std::optional<DenseMat> inverse(const DenseMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  DenseMat a = m;
  DenseMat inv = DenseMat::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    Rational scale = 1 / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(a(col, c)) != 0) a(r, c) -= f * a(col, c);
        if (sgn(inv(col, c)) != 0) inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// ExactEchelon

ExactEchelon::ExactEchelon(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

void ExactEchelon::make_primitive(IntRow& row) {
  if (row.val.empty()) return;
  Integer g = 0;
  for (const auto& v : row.val) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.val.front()) < 0) g = -g;
  if (g != 1) {
    for (auto& v : row.val) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

ExactEchelon::IntRow ExactEchelon::to_primitive(const SparseVec& row) {
  Integer lcm = 1;
  for (const auto& e : row) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.value.get_den_mpz_t());
  }
  IntRow out;
  out.idx.reserve(row.size());
  out.val.reserve(row.size());
  for (const auto& e : row) {
    if (sgn(e.value) == 0) continue;
    Integer v = lcm / e.value.get_den() * e.value.get_num();
    out.idx.push_back(e.index);
    out.val.push_back(std::move(v));
  }
  make_primitive(out);
  return out;
}

bool ExactEchelon::insert(const SparseVec& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].index >= cols_) throw std::out_of_range("ExactEchelon::insert: column out of range");
    if (k > 0 && row[k].index <= row[k - 1].index)
      throw std::invalid_argument("ExactEchelon::insert: row indices not strictly increasing");
  }
  IntRow r = to_primitive(row);
  Integer a, b, g;
  while (!r.idx.empty()) {
    const std::size_t lead = r.idx.front();
    const std::size_t p = pivot_row_[lead];
    if (p == npos) {
      pivot_row_[lead] = rows_.size();
      rows_.push_back(std::move(r));
      return true;
    }
    const IntRow& piv = rows_[p];
    a = piv.val.front();
    b = r.val.front();
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());

    // r := a*r - b*piv; the leading terms cancel.
    IntRow next;
    next.idx.reserve(r.idx.size() + piv.idx.size());
    next.val.reserve(r.idx.size() + piv.idx.size());
    std::size_t i = 1, j = 1;
    Integer v;
    while (i < r.idx.size() || j < piv.idx.size()) {
      if (j == piv.idx.size() || (i < r.idx.size() && r.idx[i] < piv.idx[j])) {
        v = a * r.val[i];
        next.idx.push_back(r.idx[i++]);
        next.val.push_back(v);
      } else if (i == r.idx.size() || piv.idx[j] < r.idx[i]) {
        v = -b * piv.val[j];
        next.idx.push_back(piv.idx[j++]);
        next.val.push_back(v);
      } else {
        v = a * r.val[i] - b * piv.val[j];
        if (sgn(v) != 0) {
          next.idx.push_back(r.idx[i]);
          next.val.push_back(v);
        }
        ++i;
        ++j;
      }
    }
    make_primitive(next);
    r = std::move(next);
  }
  return false;
}

std::vector<SparseVec> ExactEchelon::reduced_basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < cols_; ++c) {
    if (pivot_row_[c] == npos) continue;
    const IntRow& r = rows_[pivot_row_[c]];
    SparseVec v;
    v.reserve(r.idx.size());
    for (std::size_t k = 0; k < r.idx.size(); ++k) {
      Rational q(r.val[k], r.val.front());
      q.canonicalize();
      v.push_back({r.idx[k], std::move(q)});
    }
    out.push_back(std::move(v));
  }
  // Back substitution, last pivot first.
  for (std::size_t k = out.size(); k-- > 0;) {
    const std::size_t p = out[k].front().index;
    for (std::size_t j = 0; j < k; ++j) {
      const Rational* coef = find_entry(out[j], p);
      if (coef == nullptr) continue;
      Rational c = -*coef;
      out[j] = axpy(out[j], c, out[k]);
    }
  }
  return out;
}

Subspace ExactEchelon::row_space() const { return Subspace::from_reduced(cols_, reduced_basis()); }

Subspace ExactEchelon::null_space() const {
  const auto basis = reduced_basis();
  std::vector<bool> is_pivot(cols_, false);
  for (const auto& r : basis) is_pivot[r.front().index] = true;

  std::vector<SparseVec> kernel_vectors;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    for (const auto& r : basis) {
      const Rational* e = find_entry(r, f);
      if (e != nullptr) v.push_back({r.front().index, -*e});
    }
    v.push_back({f, Rational(1)});
    std::sort(v.begin(), v.end(), [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
    kernel_vectors.push_back(std::move(v));
  }
  return Subspace::span(cols_, kernel_vectors);
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<SparseVec> rows;
  rows.reserve(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) rows.push_back({{i, Rational(1)}});
  return from_reduced(ambient_dim, std::move(rows));
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const SparseVec> vectors) {
  ExactEchelon ech(ambient_dim);
  std::vector<const SparseVec*> order;
  order.reserve(vectors.size());
  for (const auto& v : vectors) order.push_back(&v);
  std::stable_sort(order.begin(), order.end(),
                   [](const SparseVec* a, const SparseVec* b) { return a->size() < b->size(); });
  for (const auto* v : order) {
    ech.insert(*v);
    if (ech.rank() == ambient_dim) break;
  }
  return ech.row_space();
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const Vector> vectors) {
  std::vector<SparseVec> sparse;
  sparse.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw std::invalid_argument("Subspace::span: dimension mismatch");
    sparse.push_back(sparsify(v));
  }
  return span(ambient_dim, sparse);
}

Subspace Subspace::from_reduced(std::size_t ambient_dim, std::vector<SparseVec> rref) {
  Subspace s(ambient_dim);
  s.basis_ = std::move(rref);
  return s;
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(basis_.size());
  for (const auto& r : basis_) p.push_back(r.front().index);
  return p;
}

SparseVec Subspace::residual(const SparseVec& v) const {
  SparseVec r = v;
  for (const auto& b : basis_) {
    const Rational* c = find_entry(r, b.front().index);
    if (c == nullptr) continue;
    Rational coef = -*c;
    r = axpy(r, coef, b);
  }
  return r;
}

std::optional<Vector> Subspace::coordinates(const SparseVec& v) const {
  SparseVec r = v;
  Vector coords(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational* c = find_entry(r, basis_[k].front().index);
    if (c == nullptr) continue;
    coords[k] = *c;
    Rational coef = -*c;
    r = axpy(r, coef, basis_[k]);
  }
  if (!r.empty()) return std::nullopt;
  return coords;
}

bool Subspace::contains(const SparseVec& v) const {
  if (!v.empty() && v.back().index >= ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  return residual(v).empty();
}

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  return residual(sparsify(v)).empty();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("Subspace::contains: ambient mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const SparseVec& v) { return residual(v).empty(); });
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient mismatch");
  std::vector<SparseVec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient mismatch");
  const std::size_t n = a.ambient_dim();
  ExactEchelon ech(2 * n);
  for (const auto& v : a.basis()) {
    SparseVec doubled = v;
    for (const auto& e : v) doubled.push_back({e.index + n, e.value});
    ech.insert(doubled);
  }
  for (const auto& v : b.basis()) ech.insert(v);

  std::vector<SparseVec> result;
  for (auto& row : ech.reduced_basis()) {
    if (row.front().index < n) continue;
    for (auto& e : row) e.index -= n;
    result.push_back(std::move(row));
  }
  // Rows with pivots in the right half form a reduced basis of the right half.
  return Subspace::from_reduced(n, std::move(result));
}

Subspace orthogonal_complement(const Subspace& s, const DenseMat& gram) {
  const std::size_t n = s.ambient_dim();
  if (gram.rows() != n || gram.cols() != n) throw std::invalid_argument("orthogonal_complement: gram shape");
  SparseMatBuilder b(s.dim(), n);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Vector functional = gram.apply(densify(s.basis()[r], n));
    for (std::size_t c = 0; c < n; ++c) b.add(r, c, functional[c]);
  }
  return kernel(std::move(b).build());
}

// ---------------------------------------------------------------------------
// Component-wise elimination

std::vector<MatrixComponent> connected_components(const SparseMat& m) {
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  std::vector<std::size_t> parent(R + C);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<bool> col_used(C, false);
  for (std::size_t r = 0; r < R; ++r) {
    for (const auto& e : m.row(r)) {
      col_used[e.index] = true;
      std::size_t x = find(r), y = find(R + e.index);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::vector<std::size_t> comp_of_root(R + C, npos);
  std::vector<MatrixComponent> comps;
  // Number components by their smallest column so the order is stable.
  for (std::size_t c = 0; c < C; ++c) {
    if (!col_used[c]) continue;
    std::size_t root = find(R + c);
    if (comp_of_root[root] == npos) {
      comp_of_root[root] = comps.size();
      comps.emplace_back();
    }
    comps[comp_of_root[root]].cols.push_back(c);
  }
  for (std::size_t r = 0; r < R; ++r) {
    if (m.row(r).empty()) continue;
    comps[comp_of_root[find(r)]].rows.push_back(r);
  }
  return comps;
}

namespace {

struct LocalComponent {
  std::vector<std::size_t> local_col;  // global column -> local index (npos elsewhere)
};

template <typename Visitor>
void for_each_component(const SparseMat& m, Visitor&& visit) {
  std::vector<std::size_t> local(m.cols(), npos);
  for (const auto& comp : connected_components(m)) {
    for (std::size_t k = 0; k < comp.cols.size(); ++k) local[comp.cols[k]] = k;
    std::vector<SparseVec> rows;
    rows.reserve(comp.rows.size());
    for (std::size_t r : comp.rows) {
      SparseVec v;
      v.reserve(m.row(r).size());
      for (const auto& e : m.row(r)) v.push_back({local[e.index], e.value});
      rows.push_back(std::move(v));
    }
    // Markowitz-style ordering: sparsest rows first.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SparseVec& a, const SparseVec& b) { return a.size() < b.size(); });
    visit(comp, rows);
  }
}

ExactEchelon echelon_of(std::size_t cols, const std::vector<SparseVec>& rows, const Deadline& deadline) {
  ExactEchelon ech(cols);
  std::size_t counter = 0;
  for (const auto& r : rows) {
    if ((++counter & 63) == 0) deadline.check();
    ech.insert(r);
    if (ech.rank() == cols) break;
  }
  return ech;
}

}  // namespace

Subspace kernel(const SparseMat& m, const Deadline& deadline) {
  std::vector<SparseVec> basis;
  std::vector<bool> covered(m.cols(), false);
  for_each_component(m, [&](const MatrixComponent& comp, const std::vector<SparseVec>& rows) {
    for (std::size_t c : comp.cols) covered[c] = true;
    ExactEchelon ech = echelon_of(comp.cols.size(), rows, deadline);
    if (ech.rank() == comp.cols.size()) return;
    const Subspace null = ech.null_space();
    for (auto v : null.basis()) {
      for (auto& e : v) e.index = comp.cols[e.index];
      basis.push_back(std::move(v));
    }
  });
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!covered[c]) basis.push_back({{c, Rational(1)}});
  }
  return Subspace::from_reduced(m.cols(), merge_by_pivot(std::move(basis)));
}

Subspace image(const SparseMat& m, const Deadline& deadline) {
  std::vector<SparseVec> basis;
  const SparseMat t = m.transposed();
  for_each_component(t, [&](const MatrixComponent& comp, const std::vector<SparseVec>& rows) {
    ExactEchelon ech = echelon_of(comp.cols.size(), rows, deadline);
    for (auto v : ech.reduced_basis()) {
      for (auto& e : v) e.index = comp.cols[e.index];
      basis.push_back(std::move(v));
    }
  });
  return Subspace::from_reduced(m.rows(), merge_by_pivot(std::move(basis)));
}

std::size_t rank(const SparseMat& m, const Deadline& deadline) {
  std::size_t total = 0;
  for_each_component(m, [&](const MatrixComponent& comp, const std::vector<SparseVec>& rows) {
    total += echelon_of(comp.cols.size(), rows, deadline).rank();
  });
  return total;
}

}  // namespace liecert
