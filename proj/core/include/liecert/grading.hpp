#pragma once

#include <map>
#include <string>
#include <vector>

#include "liecert/exactla.hpp"
#include "liecert/liealg.hpp"

namespace liecert {

/// g = g_2 + g_1 + g_0 + g_-1 + g_-2 with g_i spanned by the x_a with
/// <a, theta> = i (and the Cartan in g_0). E is the coroot of theta.
struct ContactGrading {
  std::map<int, Subspace> levels;
  std::map<int, std::vector<std::size_t>> basis_indices;
  Element E;
  Element theta_vector;
  Element minus_theta_vector;

  int level_of(std::size_t basis_index) const;
  std::size_t dim(int level) const { return basis_indices.at(level).size(); }
};

ContactGrading contact_grading(const LieAlgebra& L);

struct ClauseResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct GradingReport {
  std::vector<ClauseResult> clauses;
  bool all_passed() const;
};

GradingReport check_grading(const LieAlgebra& L, const ContactGrading& cg);

}  // namespace liecert
