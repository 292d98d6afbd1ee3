#include <gtest/gtest.h>

#include <random>

#include "liecert/operators.hpp"

using namespace liecert;

namespace {

LieAlgebra algebra(const char* label) { return LieAlgebra::chevalley(build_root_system(parse_type(label))); }

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Slot vector (x, t) of h applied to e_d, read from Hom(g, g^) coordinates.
Vector hat_value(const Vector& h, std::size_t d, std::size_t slots) {
  return Vector(h.begin() + d * slots, h.begin() + (d + 1) * slots);
}

}  // namespace

TEST(TensorIndex, RoundTrips) {
  const auto w2 = TensorIndex::wedge2(6);
  EXPECT_EQ(w2.total_dim(), 15u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) EXPECT_EQ(w2.multi(w2.pair(i, j)), (std::vector<std::size_t>{i, j}));
  const auto w3 = TensorIndex::wedge3(6);
  EXPECT_EQ(w3.total_dim(), 20u);
  EXPECT_EQ(w3.multi(w3.triple(1, 3, 5)), (std::vector<std::size_t>{1, 3, 5}));
  const auto s2 = TensorIndex::sym2(6);
  EXPECT_EQ(s2.total_dim(), 21u);
  EXPECT_EQ(s2.multi(s2.pair(2, 2)), (std::vector<std::size_t>{2, 2}));
}

TEST(Operators, SpencerMatchesDirectEvaluation) {
  for (const char* label : {"A2", "G2"}) {
    const LieAlgebra L = algebra(label);
    const std::size_t n = L.dim();
    const HatAlgebra hat(L);
    const SparseMat D = spencer_matrix(L);
    const auto w2 = TensorIndex::wedge2(n);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 3; ++t) {
      const Vector h = random_vector(n * (n + 1), rng);
      const Vector got = D.apply(h);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const Vector hi_ej = hat.evaluate(hat_value(h, i, n + 1)).column(j);
          const Vector hj_ei = hat.evaluate(hat_value(h, j, n + 1)).column(i);
          for (std::size_t k = 0; k < n; ++k)
            ASSERT_EQ(got[w2.pair(i, j) * n + k], hi_ej[k] - hj_ei[k]) << label;
        }
    }
  }
}

TEST(Operators, BianchiMatchesDirectEvaluation) {
  for (const char* label : {"A2", "G2"}) {
    const LieAlgebra L = algebra(label);
    const std::size_t n = L.dim();
    const HatAlgebra hat(L);
    const SparseMat B = bianchi_matrix(L);
    ASSERT_EQ(B.rows(), bianchi_rows(n));
    ASSERT_EQ(B.cols(), bianchi_cols(n));
    const auto w2 = TensorIndex::wedge2(n);
    const auto w3 = TensorIndex::wedge3(n);
    std::mt19937_64 rng(23);
    const Vector H = random_vector(B.cols(), rng);
    const Vector got = B.apply(H);
    // H(a, b) e_c with antisymmetry in (a, b)
    auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
      const std::size_t p = a < b ? w2.pair(a, b) : w2.pair(b, a);
      Vector v = hat.evaluate(hat_value(H, p, n + 1)).column(c);
      if (a > b)
        for (auto& x : v) x = -x;
      return v;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          const Vector x = term(i, j, k), y = term(j, k, i), z = term(k, i, j);
          for (std::size_t m = 0; m < n; ++m)
            ASSERT_EQ(got[w3.triple(i, j, k) * n + m], x[m] + y[m] + z[m]) << label;
        }
  }
}

TEST(Operators, BracketSatisfiesBianchi) {
  for (const char* label : {"A2", "G2", "B2"}) {
    const LieAlgebra L = algebra(label);
    EXPECT_TRUE(is_zero(bianchi_matrix(L).apply(bracket_element(L)))) << label;
  }
}

TEST(Operators, SpencerInjectiveOnSmallTypes) {
  for (const char* label : {"A2", "G2", "B3"}) {
    const LieAlgebra L = algebra(label);
    const SparseMat D = spencer_matrix(L);
    EXPECT_EQ(rank(D), D.cols()) << label;
    EXPECT_EQ(rank(spencer_matrix(L, Codomain::adjoint)), L.dim() * L.dim()) << label;
  }
}

TEST(Operators, CurvatureKernelExactSmallTypes) {
  const Budget budget;
  for (const auto& [label, scale] : {std::pair{"A2", Rational(-1)}, std::pair{"G2", Rational(-1, 3)}}) {
    const LieAlgebra L = algebra(label);
    const CurvatureResult r = formal_curvature_space(L, SolveMode::exact, budget, {});
    ASSERT_TRUE(r.kernel.has_value());
    ASSERT_EQ(r.kernel->dim(), 1u) << label;
    ASSERT_TRUE(r.scale.has_value());
    EXPECT_EQ(*r.scale, scale) << label;
    const auto s = proportionality(r.kernel->basis()[0], sparsify(bracket_element(L)));
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(*s, scale);
  }
}

TEST(Operators, CurvatureModularAgreesWithExact) {
  const LieAlgebra L = algebra("A2");
  const CurvatureResult r = formal_curvature_space(L, SolveMode::modular, Budget{}, {5, 2});
  ASSERT_TRUE(r.nullity.has_value());
  EXPECT_TRUE(r.nullity->certified);
  EXPECT_EQ(r.nullity->known_dim, 1u);
}

TEST(Operators, LargeTypeHitsResourceLimit) {
  const LieAlgebra L = algebra("F4");
  EXPECT_THROW(formal_curvature_space(L, SolveMode::automatic, Budget{}, {}), ResourceLimitExceeded);
  Budget tiny;
  tiny.memory_bytes = 1024;
  EXPECT_THROW(formal_curvature_space(algebra("A2"), SolveMode::exact, tiny, {}), ResourceLimitExceeded);
}

TEST(Operators, Proportionality) {
  const SparseVec w = sparsify(Vector{0, 2, -4});
  EXPECT_EQ(proportionality(sparsify(Vector{0, -1, 2}), w), Rational(-1, 2));
  EXPECT_FALSE(proportionality(sparsify(Vector{1, -1, 2}), w).has_value());
  EXPECT_FALSE(proportionality(sparsify(Vector{0, -1, 3}), w).has_value());
}
