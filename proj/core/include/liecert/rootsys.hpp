#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liecert {

/// Coefficients over the simple roots.
using RootVec = std::vector<int>;

struct SimpleType {
  char type = 'A';
  int rank = 1;

  std::string name() const { return std::string(1, type) + std::to_string(rank); }
  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

/// Parses labels such as "A2", "g2", "E6". Throws std::invalid_argument for
/// malformed labels or invalid type/rank combinations.
SimpleType parse_type(std::string_view label);
/// Whether (type, rank) names a simple Lie algebra (A>=1, B>=2, C>=2, D>=3,
/// E6-8, F4, G2).
bool is_valid_type(char type, int rank);

/// Root system in Bourbaki numbering. The invariant form is normalized so the
/// shortest roots have square length 2.
class RootSystem {
 public:
  char type_label() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const { return SimpleType{type_, rank_}.name(); }

  /// Sorted by height, then lexicographically; negative roots first.
  const std::vector<RootVec>& roots() const { return roots_; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<int>& length_squares() const { return length_squares_; }
  const RootVec& highest_root() const { return roots_.back(); }

  std::size_t size() const { return roots_.size(); }
  std::optional<std::size_t> index_of(const RootVec& v) const;
  std::size_t simple_root_index(int i) const;
  std::size_t negative_index(std::size_t root) const;
  bool is_positive(std::size_t root) const { return root >= roots_.size() / 2; }

  /// Invariant form (a, b) on integer vectors over the simple roots.
  int inner(const RootVec& a, const RootVec& b) const;
  int height(const RootVec& a) const;

 private:
  friend RootSystem build_root_system(char type, int rank);

  char type_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<int>> form_;  // (alpha_i, alpha_j)
  std::vector<std::vector<int>> cartan_;
  std::vector<int> length_squares_;
  std::vector<RootVec> roots_;
  std::map<RootVec, std::size_t> index_;
};

/// Throws std::invalid_argument for an invalid type/rank combination.
RootSystem build_root_system(char type, int rank);
inline RootSystem build_root_system(SimpleType t) { return build_root_system(t.type, t.rank); }

/// <a, b> = 2(a, b)/(b, b). Throws std::invalid_argument when b = 0 or the
/// value is not an integer.
int pairing(const RootSystem& rs, const RootVec& a, const RootVec& b);

/// Level i -> indices of roots alpha with <alpha, theta> = i.
std::map<int, std::vector<std::size_t>> level_partition(const RootSystem& rs);

}  // namespace liecert
