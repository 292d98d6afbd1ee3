#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liecert/exactla.hpp"
#include "liecert/rootsys.hpp"

namespace liecert {

/// Coordinates over the algebra basis.
using Element = Vector;

/// Simple Lie algebra with basis [h_1..h_l] followed by x_alpha in root
/// order. h_i is the coroot of alpha_i; [x_a, x_-a] is the coroot of a.
class LieAlgebra {
 public:
  /// Chevalley basis with signs fixed by extraspecial pairs. Throws
  /// std::logic_error if an internal consistency check fails.
  static LieAlgebra chevalley(const RootSystem& rs);
  /// Adopts a structure table, e.g. one read back from the cache. table[i*n+j]
  /// holds [e_i, e_j]; antisymmetry is checked.
  static LieAlgebra from_structure(const RootSystem& rs, std::vector<SparseVec> table);

  const RootSystem& root_system() const { return rs_; }
  std::size_t dim() const { return n_; }
  std::size_t rank() const { return static_cast<std::size_t>(rs_.rank()); }

  std::size_t root_basis_index(std::size_t root) const { return rank() + root; }
  /// Root index of a basis vector, nullopt for the Cartan part.
  std::optional<std::size_t> root_of(std::size_t basis_index) const;
  /// Weight over the simple roots (zero for the Cartan part).
  RootVec weight(std::size_t basis_index) const;
  std::string label(std::size_t basis_index) const;

  /// [e_i, e_j] as a sparse vector.
  const SparseVec& structure(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  const std::vector<SparseVec>& structure_table() const { return table_; }

  Element basis_vector(std::size_t i) const;
  Element bracket(std::span<const Rational> x, std::span<const Rational> y) const;
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
  /// Column j is [x, e_j].
  DenseMat ad_matrix(std::span<const Rational> x) const;
  SparseMat ad_basis(std::size_t i) const;

  Rational killing_form(std::span<const Rational> x, std::span<const Rational> y) const;
  const DenseMat& killing_gram() const { return gram_; }
  const DenseMat& killing_gram_inverse() const { return gram_inv_; }
  /// gram^{-1} b, so that B(flat(b) v, w) = b(v, w) for symmetric b.
  DenseMat flat(const DenseMat& b) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.rs_.name() == b.rs_.name() && a.table_ == b.table_;
  }

 private:
  LieAlgebra(const RootSystem& rs, std::vector<SparseVec> table);

  RootSystem rs_;
  std::size_t n_ = 0;
  std::vector<SparseVec> table_;
  DenseMat gram_;
  DenseMat gram_inv_;
};

}  // namespace liecert
