#pragma once

// Coordinates on tensor spaces built from g, and the Spencer and Bianchi
// operators as sparse rational matrices.
//
// Coordinate conventions (fixed, domain-major):
//   wedge2  pairs i < j in lexicographic order
//   wedge3  triples i < j < k in lexicographic order
//   sym2    pairs i <= j in lexicographic order; (i, j) is E_ij + E_ji for
//           i < j and E_ii on the diagonal
//   hom     (d, c) -> d * codomain_dim + c
// The hat algebra g^ = ad_g + C Id has n + 1 slots: slot c < n is ad_{e_c},
// slot n is Id.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "liecert/budget.hpp"
#include "liecert/exactla.hpp"
#include "liecert/liealg.hpp"
#include "liecert/modular.hpp"

namespace liecert {

class TensorIndex {
 public:
  enum class Kind { wedge2, wedge3, sym2, hom };

  static TensorIndex wedge2(std::size_t n);
  static TensorIndex wedge3(std::size_t n);
  static TensorIndex sym2(std::size_t n);
  static TensorIndex hom(std::size_t domain_dim, std::size_t codomain_dim);

  Kind kind() const { return kind_; }
  std::size_t total_dim() const { return total_; }

  /// wedge2: i < j; sym2: i <= j; hom: (domain, codomain).
  std::size_t pair(std::size_t i, std::size_t j) const;
  /// wedge3: i < j < k.
  std::size_t triple(std::size_t i, std::size_t j, std::size_t k) const;
  std::vector<std::size_t> multi(std::size_t index) const;

 private:
  TensorIndex(Kind kind, std::size_t a, std::size_t b);

  Kind kind_;
  std::size_t n_;
  std::size_t m_;  // codomain dim for hom
  std::size_t total_;
  std::vector<std::size_t> offset_;  // first-index offsets for wedge2/sym2/wedge3
};

/// g^ = ad_g + C Id as n + 1 coordinates.
class HatAlgebra {
 public:
  explicit HatAlgebra(const LieAlgebra& L) : L_(&L) {}

  std::size_t dim() const { return L_->dim() + 1; }
  std::size_t id_slot() const { return L_->dim(); }
  /// slot applied to e_m: [e_slot, e_m] or e_m.
  SparseVec act(std::size_t slot, std::size_t m) const;
  /// ad_x + t Id for coordinates (x, t).
  DenseMat evaluate(std::span<const Rational> coords) const;

 private:
  const LieAlgebra* L_;
};

enum class Codomain { hat, adjoint };

/// Matrix of dh(u, v) = h(u) v - h(v) u from Hom(g, cod) to Hom(wedge2 g, g).
SparseMat spencer_matrix(const LieAlgebra& L, Codomain cod = Codomain::hat);

/// Matrix of h -> h#, h#(u, v, w) = h(u, v) w + h(v, w) u + h(w, u) v,
/// from Hom(wedge2 g, g^) to Hom(wedge3 g, g).
SparseMat bianchi_matrix(const LieAlgebra& L);
std::uint64_t bianchi_rows(std::size_t n);
std::uint64_t bianchi_cols(std::size_t n);

/// (u ^ v) -> ad_[u,v] in Hom(wedge2 g, g^) coordinates; Id part zero.
Vector bracket_element(const LieAlgebra& L);
/// (u ^ v) -> [u, v] in Hom(wedge2 g, g) coordinates.
Vector bracket_hom(const LieAlgebra& L);

/// If v = s * w for a rational s (w != 0), returns s.
std::optional<Rational> proportionality(const SparseVec& v, const SparseVec& w);

enum class SolveMode { exact, modular, automatic };

struct CurvatureResult {
  SolveMode mode = SolveMode::exact;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  /// Exact mode: the rational kernel.
  std::optional<Subspace> kernel;
  /// Modular mode: certificate against span(bracket_element).
  std::optional<CertifiedNullity> nullity;
  /// Exact mode: kernel generator = scale * bracket_element when proportional.
  std::optional<Rational> scale;
};

struct PrimePolicy {
  std::uint64_t seed = 0;
  std::size_t count = 3;
};

/// K(g^) = ker(bianchi_matrix). Automatic mode is exact for n <= 14.
/// Throws ResourceLimitExceeded when the dense-equivalent footprint exceeds
/// the budget or the deadline passes.
CurvatureResult formal_curvature_space(const LieAlgebra& L, SolveMode mode, const Budget& budget,
                                       const PrimePolicy& primes, const Deadline& deadline = Deadline::none());

}  // namespace liecert
