#include "liecert/grading.hpp"

#include <algorithm>
#include <stdexcept>

namespace liecert {

namespace {

SparseVec unit(std::size_t i) { return {{i, Rational(1)}}; }

Subspace coordinate_span(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<SparseVec> rows;
  for (std::size_t i : idx) rows.push_back(unit(i));
  std::sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) { return a[0].index < b[0].index; });
  return Subspace::from_reduced(n, std::move(rows));
}

}  // namespace

int ContactGrading::level_of(std::size_t basis_index) const {
  for (const auto& [level, idx] : basis_indices) {
    if (std::find(idx.begin(), idx.end(), basis_index) != idx.end()) return level;
  }
  throw std::out_of_range("ContactGrading::level_of: index not in any level");
}

ContactGrading contact_grading(const LieAlgebra& L) {
  const auto& rs = L.root_system();
  const std::size_t n = L.dim();
  ContactGrading cg;
  for (int i = -2; i <= 2; ++i) cg.basis_indices[i];
  for (std::size_t h = 0; h < L.rank(); ++h) cg.basis_indices[0].push_back(h);
  for (const auto& [level, roots] : level_partition(rs)) {
    if (level < -2 || level > 2) throw std::logic_error("contact_grading: root level outside [-2, 2]");
    for (std::size_t r : roots) cg.basis_indices[level].push_back(L.root_basis_index(r));
  }
  for (auto& [level, idx] : cg.basis_indices) {
    std::sort(idx.begin(), idx.end());
    cg.levels.emplace(level, coordinate_span(n, idx));
  }
  const std::size_t theta = rs.size() - 1;
  cg.theta_vector = L.basis_vector(L.root_basis_index(theta));
  cg.minus_theta_vector = L.basis_vector(L.root_basis_index(rs.negative_index(theta)));
  cg.E = L.bracket(cg.theta_vector, cg.minus_theta_vector);
  return cg;
}

bool GradingReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

GradingReport check_grading(const LieAlgebra& L, const ContactGrading& cg) {
  const std::size_t n = L.dim();
  GradingReport report;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.clauses.push_back({std::move(name), ok, std::move(detail)});
  };
  auto level = [&](int i) -> const Subspace& { return cg.levels.at(i); };
  auto in_level = [&](int i, const SparseVec& v) {
    if (v.empty()) return true;
    if (i < -2 || i > 2) return false;
    return level(i).contains(v);
  };

  {
    Subspace total(n);
    std::size_t dims = 0;
    for (int i = -2; i <= 2; ++i) {
      total = sum(total, level(i));
      dims += level(i).dim();
    }
    add("direct_sum", total.dim() == n && dims == n,
        "sum of level dims " + std::to_string(dims) + ", span " + std::to_string(total.dim()) + " of " + std::to_string(n));
  }
  {
    bool ok = level(2).dim() == 1 && level(-2).dim() == 1 && level(2).contains(std::span<const Rational>(cg.theta_vector)) &&
              level(-2).contains(std::span<const Rational>(cg.minus_theta_vector));
    add("extreme_levels_one_dimensional", ok,
        "dim g2 = " + std::to_string(level(2).dim()) + ", dim g-2 = " + std::to_string(level(-2).dim()));
  }
  {
    bool ok = true;
    for (int i = 1; i <= 2; ++i) ok = ok && level(i).dim() == level(-i).dim();
    add("symmetric_dims", ok);
  }
  {
    bool ok = true;
    std::string first_bad;
    for (int i = -2; i <= 2 && ok; ++i) {
      for (int j = -2; j <= 2 && ok; ++j) {
        for (std::size_t a : cg.basis_indices.at(i)) {
          for (std::size_t b : cg.basis_indices.at(j)) {
            if (!in_level(i + j, L.structure(a, b))) {
              ok = false;
              first_bad = "[" + L.label(a) + ", " + L.label(b) + "]";
              break;
            }
          }
          if (!ok) break;
        }
      }
    }
    add("bracket_compatible", ok, first_bad);
  }
  {
    bool ok = true;
    const SparseVec e = sparsify(cg.E);
    for (int i = -2; i <= 2; ++i) {
      for (const auto& v : level(i).basis()) {
        SparseVec ev = L.bracket(e, v);
        ok = ok && ev == axpy({}, Rational(i), v);
      }
    }
    add("E_acts_by_level", ok);
    SparseVec ex = L.bracket(e, sparsify(cg.theta_vector));
    SparseVec two_theta = sparsify(cg.theta_vector);
    for (auto& x : two_theta) x.value *= 2;
    add("E_normalized", ex == two_theta, "[E, x_theta] = 2 x_theta");
  }
  {
    // [g2, g-2] is spanned by E.
    Element b = L.bracket(cg.theta_vector, cg.minus_theta_vector);
    Subspace span_b = Subspace::span(n, std::vector<Vector>{b});
    Subspace span_e = Subspace::span(n, std::vector<Vector>{cg.E});
    add("g2_gm2_spans_E", span_b.dim() == 1 && span_b == span_e);
    Rational bee = L.killing_form(cg.E, cg.E);
    add("killing_E_E_nonzero", sgn(bee) != 0, "B(E, E) = " + to_string(bee));
  }
  {
    bool ok = true;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        if (i + j == 0) continue;
        for (std::size_t a : cg.basis_indices.at(i))
          for (std::size_t b : cg.basis_indices.at(j)) ok = ok && sgn(L.killing_gram()(a, b)) == 0;
      }
    }
    add("killing_orthogonal", ok, "B(g_i, g_j) = 0 for i + j != 0");
  }
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= 2; ++i) {
      const auto& rows = cg.basis_indices.at(i);
      const auto& cols = cg.basis_indices.at(-i);
      std::vector<Triplet> t;
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const Rational& v = L.killing_gram()(rows[r], cols[c]);
          if (sgn(v) != 0) t.push_back({r, c, v});
        }
      const std::size_t rk = rank(SparseMat(rows.size(), cols.size(), std::move(t)));
      ok = ok && rk == rows.size() && rk == cols.size();
      detail += "rank on g" + std::to_string(i) + " x g" + std::to_string(-i) + " = " + std::to_string(rk) + "; ";
    }
    add("killing_nondegenerate_pairing", ok, detail);
  }
  {
    // g1 x g1 -> g2 through the coefficient of x_theta.
    const auto& g1 = cg.basis_indices.at(1);
    const std::size_t theta = cg.basis_indices.at(2).front();
    bool inside = true;
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < g1.size(); ++r) {
      for (std::size_t c = 0; c < g1.size(); ++c) {
        const SparseVec& v = L.structure(g1[r], g1[c]);
        inside = inside && in_level(2, v);
        for (const auto& e : v)
          if (e.index == theta) t.push_back({r, c, e.value});
      }
    }
    const std::size_t rk = rank(SparseMat(g1.size(), g1.size(), std::move(t)));
    add("g1_pairing_nondegenerate", inside && rk == g1.size(),
        "rank " + std::to_string(rk) + " of " + std::to_string(g1.size()));
  }
  {
    bool ok = true;
    for (std::size_t h = 0; h < L.rank(); ++h) ok = ok && cg.level_of(h) == 0;
    for (std::size_t a : cg.basis_indices.at(0)) {
      if (a >= L.rank()) ok = ok && pairing(L.root_system(), L.weight(a), L.root_system().highest_root()) == 0;
    }
    for (std::size_t a : cg.basis_indices.at(0))
      for (std::size_t b : cg.basis_indices.at(2)) ok = ok && in_level(2, L.structure(a, b));
    add("g0_structure", ok, "g0 = Cartan + level-0 root spaces; [g0, g2] in g2");
  }
  return report;
}

}  // namespace liecert
