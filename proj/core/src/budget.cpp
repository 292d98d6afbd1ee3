#include "liecert/budget.hpp"

#include <limits>

namespace liecert {

Deadline::Deadline(std::chrono::steady_clock::duration allowance)
    : bounded_(true), end_(std::chrono::steady_clock::now() + allowance) {}

const Deadline& Deadline::none() {
  static const Deadline unbounded;
  return unbounded;
}

bool Deadline::expired() const {
  return bounded_ && std::chrono::steady_clock::now() > end_;
}

void Deadline::check() const {
  if (expired()) throw ResourceLimitExceeded("time budget exceeded");
}

void require_dense_footprint(const Budget& budget, std::uint64_t rows, std::uint64_t cols,
                             const std::string& what) {
  constexpr std::uint64_t kBytesPerResidue = 4;
  const auto limit = std::numeric_limits<std::uint64_t>::max();
  if (cols != 0 && rows > limit / cols / kBytesPerResidue)
    throw ResourceLimitExceeded(what + ": footprint overflows 64 bits");
  const std::uint64_t bytes = rows * cols * kBytesPerResidue;
  if (bytes > budget.memory_bytes) {
    throw ResourceLimitExceeded(what + ": " + std::to_string(rows) + " x " +
                                std::to_string(cols) + " needs " + std::to_string(bytes) +
                                " bytes, budget " + std::to_string(budget.memory_bytes));
  }
}

}  // namespace liecert
