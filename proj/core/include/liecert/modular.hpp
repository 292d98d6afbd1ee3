#pragma once

// Ranks over prime fields. Rank mod p never exceeds the rational rank, so a
// prime that reaches cols - dim(known kernel) pins the rational kernel.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "liecert/budget.hpp"
#include "liecert/exactla.hpp"

namespace liecert {

using Residue = std::uint32_t;

/// Deterministic Miller-Rabin, exact for n < 4'759'123'141.
bool is_prime(std::uint64_t n);

/// Primes drawn uniformly-by-rejection from [2^30, 2^31).
class PrimeSampler {
 public:
  explicit PrimeSampler(std::uint64_t seed) : engine_(seed) {}
  Residue next();

 private:
  std::mt19937_64 engine_;
};

/// nullopt when p divides the denominator.
std::optional<Residue> reduce(const Rational& q, Residue p);

using ModRow = std::vector<std::pair<std::size_t, Residue>>;

/// Incremental dense echelon over F_p. Each stored row has pivot entry 1 and
/// is zero at the pivots of the rows stored before it.
class ModularEchelon {
 public:
  ModularEchelon(std::size_t cols, Residue p);

  bool insert(const ModRow& row);
  bool insert(std::span<const Residue> dense);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  Residue prime() const { return p_; }

 private:
  bool insert_dense(std::vector<Residue>& v);

  std::size_t cols_;
  Residue p_;
  std::vector<std::vector<Residue>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of m over F_p, component by component. nullopt when p divides some
/// entry's denominator.
std::optional<std::size_t> modular_rank(const SparseMat& m, Residue p,
                                        const Deadline& deadline = Deadline::none());

struct PrimeAttempt {
  Residue prime;
  /// Unset when the prime divided a denominator and was replaced.
  std::optional<std::size_t> rank;

  friend bool operator==(const PrimeAttempt&, const PrimeAttempt&) = default;
};

struct CertifiedNullity {
  bool certified = false;
  std::size_t known_dim = 0;
  /// cols - known_dim; any prime reaching it proves kernel == known kernel.
  std::size_t target_rank = 0;
  std::vector<PrimeAttempt> attempts;

  std::size_t successes() const;
};

/// Checks known_kernel ⊆ ker(m) exactly (throws std::invalid_argument if
/// not), then tries each prime. A prime dividing a denominator is recorded
/// and replaced by one drawn from PrimeSampler(resample_seed).
CertifiedNullity certify_nullity(const SparseMat& m, const Subspace& known_kernel,
                                 std::span<const Residue> primes, std::uint64_t resample_seed = 0,
                                 const Deadline& deadline = Deadline::none());

/// Draws `count` primes from PrimeSampler(seed).
CertifiedNullity certify_nullity(const SparseMat& m, const Subspace& known_kernel, std::uint64_t seed,
                                 std::size_t count, const Deadline& deadline = Deadline::none());

}  // namespace liecert
