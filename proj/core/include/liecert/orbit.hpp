#pragma once

// Exact samples of the minimal nilpotent orbit and the subspaces cut out by
// conditions at its points, realized as kernels of sampled linear constraints.
//
// Unknown spaces use the coordinates of operators.hpp:
//   Hom(wedge2 g, g): (pair, k) -> pair * n + k
//   Sym2 g*:          sym2 pairs (i <= j)
//   Hom(g, g^):       (i, slot) -> i * (n + 1) + slot

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liecert/budget.hpp"
#include "liecert/exactla.hpp"
#include "liecert/grading.hpp"
#include "liecert/liealg.hpp"
#include "liecert/modular.hpp"
#include "liecert/operators.hpp"

namespace liecert {

struct WordLetter {
  std::size_t root;  // index of +-alpha_i in the root list
  Rational t;
};

struct OrbitSample {
  Element point;
  /// Letters are applied in order: z = exp(t_k ad x_k) ... exp(t_1 ad x_1) x_theta.
  std::vector<WordLetter> word;
  /// T_z = image(ad_z).
  Subspace tangent;
  /// Coordinates outside the pivots of `tangent`; a fixed complement.
  std::vector<std::size_t> complement;
};

/// exp(t ad x_root) v; the series stops because ad x_root is nilpotent.
Element exp_ad_root(const LieAlgebra& L, std::size_t root, const Rational& t, const Element& v);
Element apply_word(const LieAlgebra& L, const std::vector<WordLetter>& word, Element v);
OrbitSample make_sample(const LieAlgebra& L, std::vector<WordLetter> word);

/// Default word length for sample_orbit: |positive roots| + 2 rank.
std::size_t default_word_length(const LieAlgebra& L);

/// Samples index .. index + count - 1 of the stream for `seed`. Letters use
/// x_{+-alpha_i} with parameters from {1, -1, 2, -2, 1/2, -1/2, 1/3, -1/3}.
/// All but the last 2 * rank letters are lowering, which lands in the open
/// cell U^- x_theta; the tail mixes both signs. word_length 0 selects
/// default_word_length.
std::vector<OrbitSample> sample_orbit(const LieAlgebra& L, std::size_t count, std::uint64_t seed,
                                      std::size_t first_index = 0, std::size_t word_length = 0);

/// g acting on a tensor space built from g.
class TensorRepresentation {
 public:
  enum class Kind { wedge2, sym2_dual, hom_wedge2 };

  TensorRepresentation(const LieAlgebra& L, Kind kind);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  /// Action of the basis vector e_x on a coordinate vector.
  SparseVec act(std::size_t x, const SparseVec& v) const;
  /// Torus weight of each coordinate.
  std::vector<RootVec> weights() const;
  /// Basis indices of x_{alpha_i} (raising) and x_{-alpha_i}.
  std::vector<std::size_t> raising() const;
  std::vector<std::size_t> lowering() const;

 private:
  const LieAlgebra* L_;
  Kind kind_;
  std::size_t n_;
  std::size_t dim_;
  TensorIndex w2_;
  TensorIndex s2_;
  // adjacency_[x][m] lists (u, A_{m,u}) with A = ad_{e_x}
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>> adjacency_;
};

bool is_invariant(const TensorRepresentation& rep, const Subspace& module,
                  const Deadline& deadline = Deadline::none());

/// Number of irreducible summands of a g-invariant subspace: the dimension
/// of the joint kernel of the raising operators. Throws std::invalid_argument
/// if `module` is not invariant.
std::size_t count_summands(const TensorRepresentation& rep, const Subspace& module,
                           const Deadline& deadline = Deadline::none());

/// Block id per coordinate, grouping equal weights. A single block when
/// `split` is false.
std::vector<std::size_t> weight_blocks(const std::vector<RootVec>& weights, bool split = true);

enum class Arithmetic { exact, modular };

/// Rows of sampled linear constraints, reduced per weight block. Every row
/// vanishes on the true solution space, so the kernel is an upper bound.
class ConstraintAccumulator {
 public:
  ConstraintAccumulator(std::vector<std::size_t> column_block, Arithmetic arithmetic, Residue prime = 0);

  /// Per-block targets from a weight-homogeneous subspace known to lie in the
  /// solution space; blocks at their target stop absorbing rows.
  void set_lower_bound(const Subspace& lower_bound);

  void add_row(const SparseVec& row);
  void add_row(const ModRow& row);

  Arithmetic arithmetic() const { return arithmetic_; }
  Residue prime() const { return prime_; }
  std::size_t ambient_dim() const { return column_block_.size(); }
  std::size_t rank() const;
  std::size_t kernel_dim() const { return ambient_dim() - rank(); }
  bool at_lower_bound() const;
  std::size_t rows_added() const { return rows_added_; }
  std::size_t denominator_skips() const { return denominator_skips_; }
  std::size_t block_count() const { return blocks_.size(); }
  /// Exact arithmetic only.
  Subspace kernel() const;

 private:
  struct Block {
    std::vector<std::size_t> cols;
    std::optional<ExactEchelon> exact;
    std::optional<ModularEchelon> modular;
    std::size_t target;
    std::size_t rank() const { return exact ? exact->rank() : modular->rank(); }
  };

  std::vector<std::size_t> column_block_;
  std::vector<std::size_t> local_;
  std::vector<Block> blocks_;
  Arithmetic arithmetic_;
  Residue prime_;
  bool has_lower_bound_ = false;
  std::size_t lower_bound_dim_ = 0;
  std::size_t rows_added_ = 0;
  std::size_t denominator_skips_ = 0;
  std::vector<ModRow> mod_scratch_;
  std::vector<SparseVec> exact_scratch_;
  std::vector<std::size_t> touched_;
};

struct StabilizationConfig {
  std::uint64_t seed = 0;
  std::size_t batch_size = 8;
  std::size_t max_batches = 12;
  std::size_t plateau_batches = 3;
  bool split_by_weight = true;
  std::size_t word_length = 0;
};

enum class Confidence { certified, plateau, unresolved };
std::string to_string(Confidence c);

struct SampledSpace {
  Confidence confidence = Confidence::unresolved;
  Arithmetic arithmetic = Arithmetic::exact;
  Residue prime = 0;
  std::size_t ambient_dim = 0;
  /// Kernel dimension of the sampled constraints (an upper bound).
  std::size_t kernel_dim = 0;
  std::vector<std::size_t> dims_per_batch;
  std::size_t samples_used = 0;
  std::size_t rows_added = 0;
  std::size_t denominator_skips = 0;
  /// Exact kernel (exact arithmetic) or the certified lower bound.
  std::optional<Subspace> space;
  /// How a certified outcome was reached: "lower_bound" or "invariance".
  std::string certified_by;
  /// The lower bound vanishes on every constraint row checked exactly.
  std::optional<bool> lower_bound_consistent;
};

/// Xi_Y: sigma(z, T_z) in T_z at sampled z. With a lower bound the outcome is
/// certified once the kernel dimension meets it; in exact arithmetic without
/// reaching it, an invariant kernel satisfying the base-point condition is
/// certified on its own.
SampledSpace xi_space(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                      const Subspace* lower_bound, Residue prime, const Budget& budget,
                      const Deadline& deadline = Deadline::none());

/// Xi'_Y: sigma(z, T_z) in C z. The bracket is the lower bound.
SampledSpace xi_prime_space(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                            Residue prime, const Budget& budget, const Deadline& deadline = Deadline::none());

/// Sigma: quadrics vanishing at the sampled points, certified when the
/// kernel is g-invariant and vanishes at x_theta.
SampledSpace sigma_quadrics(const LieAlgebra& L, const StabilizationConfig& config, const Budget& budget,
                            const Deadline& deadline = Deadline::none());

/// Symmetric matrix of a Sym2 g* coordinate vector.
DenseMat quadric_matrix(std::size_t n, const SparseVec& q);
Rational evaluate_quadric(const SparseVec& q, std::span<const Rational> z);

/// S = Hom(g, C Id) + ad_g + Sigma_flat in Hom(g, g^). Throws
/// std::logic_error when the three summands overlap.
Subspace build_S(const LieAlgebra& L, const Subspace& sigma);
/// Image of S under the Spencer operator.
Subspace spencer_image(const LieAlgebra& L, const Subspace& S);

/// sigma(z, w) for sigma in Hom(wedge2 g, g) coordinates.
Element evaluate_hom(const LieAlgebra& L, const SparseVec& sigma, std::span<const Rational> z,
                     std::span<const Rational> w);

/// Every element of `space` (in Hom(wedge2 g, g)) satisfies sigma(u, T_u) in
/// target(u) at u = x_theta, and `space` is g-invariant. `to_line` selects
/// target C u instead of T_u. Together with invariance this proves the space
/// lies in Xi_Y (or Xi'_Y).
bool satisfies_at_base(const LieAlgebra& L, const Subspace& space, bool to_line);

struct SpanResult {
  std::size_t achieved = 0;
  std::size_t full = 0;
  std::vector<std::size_t> dims_per_batch;
  std::size_t samples_used = 0;
  bool spans() const { return achieved == full; }
};

/// Span of {z ^ w : w in T_z} in wedge2 g over the sampled z.
SpanResult tangent_lines_span(const LieAlgebra& L, const StabilizationConfig& config, Arithmetic arithmetic,
                              Residue prime, const Deadline& deadline = Deadline::none());

struct GuSampleResult {
  bool tangent_is_translate = false;   // [g, z] = phi(T_{x_theta})
  bool bracket_into_line = false;      // [T_z, z] in C z
  bool perp_preserves_tangent = false; // [(T_z)^perp, T_z] in T_z
  bool dhat_commutes = false;          // [z, D_z] = 0, dim D_z = dim T_z - 1
  std::size_t tangent_dim = 0;
  std::size_t dhat_dim = 0;
  bool all() const { return tangent_is_translate && bracket_into_line && perp_preserves_tangent && dhat_commutes; }
};

struct GuReport {
  bool base_tangent_matches_grading = false;  // T = g2 + g1 + C E at x_theta
  bool base_dhat_matches_grading = false;     // D = g2 + g1 at x_theta
  std::vector<GuSampleResult> samples;
  bool all_passed() const;
};

GuReport gu_pointwise_checks(const LieAlgebra& L, const ContactGrading& cg, const std::vector<OrbitSample>& samples,
                             const Deadline& deadline = Deadline::none());

}  // namespace liecert
