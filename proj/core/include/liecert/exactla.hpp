#pragma once

// Exact rational linear algebra: sparse matrices, canonical subspaces and
// fraction-free elimination. Modular ranks live in modular.hpp.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "liecert/budget.hpp"
#include "liecert/rational.hpp"

namespace liecert {

using Vector = std::vector<Rational>;

struct SparseEntry {
  std::size_t index;
  Rational value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted by index, strictly increasing, no zero values.
using SparseVec = std::vector<SparseEntry>;

SparseVec sparsify(std::span<const Rational> dense);
Vector densify(const SparseVec& v, std::size_t dim);
Rational dot(const SparseVec& a, std::span<const Rational> b);
/// a + s*b
SparseVec axpy(const SparseVec& a, const Rational& s, const SparseVec& b);
bool is_zero(std::span<const Rational> v);

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

/// Accumulates triplets; duplicate positions are summed and zeros dropped.
class SparseMatBuilder {
 public:
  SparseMatBuilder(std::size_t rows, std::size_t cols);

  void add(std::size_t row, std::size_t col, const Rational& value);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  class SparseMat build() &&;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> entries_;
};

/// Compressed-row rational matrix. Construction from triplets rejects
/// out-of-range indices and duplicate positions; explicit zeros are dropped.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseMat identity(std::size_t n);
  static SparseMat zero(std::size_t rows, std::size_t cols) { return {rows, cols, {}}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  std::span<const SparseEntry> row(std::size_t r) const;
  std::vector<Triplet> triplets() const;

  Vector apply(std::span<const Rational> v) const;
  Vector apply(const SparseVec& v) const;
  SparseMat transposed() const;

  friend bool operator==(const SparseMat&, const SparseMat&) = default;

 private:
  friend class SparseMatBuilder;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<SparseEntry> entries_;  // column index stored in SparseEntry::index
};

class DenseMat {
 public:
  DenseMat() = default;
  DenseMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector apply(std::span<const Rational> v) const;
  DenseMat transposed() const;
  Rational trace() const;
  bool is_zero() const;
  SparseMat to_sparse() const;

  friend DenseMat operator*(const DenseMat& a, const DenseMat& b);
  friend DenseMat operator+(const DenseMat& a, const DenseMat& b);
  friend DenseMat operator-(const DenseMat& a, const DenseMat& b);
  friend bool operator==(const DenseMat&, const DenseMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::optional<DenseMat> inverse(const DenseMat& m);

class Subspace;

/// Incremental fraction-free row echelon form over the rationals. Rows are
/// kept as primitive integer vectors and reduced only on leading entries; the
/// canonical reduced form is produced on demand.
class ExactEchelon {
 public:
  explicit ExactEchelon(std::size_t cols);

  /// Returns true when the row was independent of the rows inserted so far.
  bool insert(const SparseVec& row);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduced row-echelon basis, sorted by pivot column, pivots equal to 1.
  std::vector<SparseVec> reduced_basis() const;
  Subspace row_space() const;
  Subspace null_space() const;

 private:
  struct IntRow {
    std::vector<std::size_t> idx;
    std::vector<Integer> val;
  };

  static IntRow to_primitive(const SparseVec& row);
  static void make_primitive(IntRow& row);

  std::size_t cols_;
  std::vector<IntRow> rows_;
  std::vector<std::size_t> pivot_row_;  // per column, npos when no pivot
};

/// A linear subspace of Q^ambient stored as its reduced row-echelon basis.
/// Two values compare equal iff they are the same subspace.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::size_t ambient_dim, std::span<const SparseVec> vectors);
  static Subspace span(std::size_t ambient_dim, std::span<const Vector> vectors);
  /// Adopts rows that are already in canonical reduced row-echelon form.
  static Subspace from_reduced(std::size_t ambient_dim, std::vector<SparseVec> rref);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  std::vector<std::size_t> pivots() const;

  bool contains(std::span<const Rational> v) const;
  bool contains(const SparseVec& v) const;
  bool contains(const Subspace& other) const;

  /// v minus its reduction against the basis; zero iff v is contained.
  SparseVec residual(const SparseVec& v) const;
  /// Coordinates of a contained vector in terms of basis(); nullopt otherwise.
  std::optional<Vector> coordinates(const SparseVec& v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_;
  std::vector<SparseVec> basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
/// Zassenhaus intersection.
Subspace intersect(const Subspace& a, const Subspace& b);
/// {v : B(v, w) = 0 for all w in s} with respect to a symmetric Gram matrix.
Subspace orthogonal_complement(const Subspace& s, const DenseMat& gram);

/// Connected components of the bipartite row/column incidence graph. Rank and
/// kernel split as direct sums over components.
struct MatrixComponent {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
std::vector<MatrixComponent> connected_components(const SparseMat& m);

Subspace kernel(const SparseMat& m, const Deadline& deadline = Deadline::none());
Subspace image(const SparseMat& m, const Deadline& deadline = Deadline::none());
std::size_t rank(const SparseMat& m, const Deadline& deadline = Deadline::none());

}  // namespace liecert
