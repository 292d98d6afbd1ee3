#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace liecert {

/// Resource limits for one check. Memory is compared against the
/// dense-equivalent footprint of an operator (4 bytes per residue), which is
/// a pure function of the combinatorial dimensions and therefore reproducible.
struct Budget {
  std::uint64_t memory_bytes = std::uint64_t{4} << 30;
  std::chrono::seconds time{30 * 60};
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::steady_clock::duration allowance);

  static const Deadline& none();

  bool expired() const;
  /// Throws ResourceLimitExceeded once the allowance has elapsed.
  void check() const;

 private:
  bool bounded_ = false;
  std::chrono::steady_clock::time_point end_{};
};

/// Throws ResourceLimitExceeded when `rows * cols * 4` exceeds the budget.
void require_dense_footprint(const Budget& budget, std::uint64_t rows, std::uint64_t cols,
                             const std::string& what);

}  // namespace liecert
