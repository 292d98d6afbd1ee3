#include <gtest/gtest.h>

#include <random>

#include "liecert/orbit.hpp"
#include "oracle.hpp"

using namespace liecert;

namespace {

LieAlgebra algebra(const char* label) { return LieAlgebra::chevalley(build_root_system(parse_type(label))); }

// Weyl dimension formula for the highest weight 2 theta, with weights
// written over the simple roots: prod over positive a of (2 theta + rho, a) / (rho, a).
Rational weyl_dim_two_theta(const RootSystem& rs) {
  const std::size_t l = static_cast<std::size_t>(rs.rank());
  RootVec two_rho(l, 0);
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs.is_positive(i))
      for (std::size_t c = 0; c < l; ++c) two_rho[c] += rs.roots()[i][c];
  RootVec top(l);
  for (std::size_t c = 0; c < l; ++c) top[c] = 4 * rs.highest_root()[c] + two_rho[c];
  Rational d = 1;
  for (std::size_t i = 0; i < rs.size(); ++i)
    if (rs.is_positive(i)) {
      Rational f(rs.inner(top, rs.roots()[i]), rs.inner(two_rho, rs.roots()[i]));
      f.canonicalize();
      d *= f;
    }
  return d;
}

SparseVec killing_quadric(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const auto s2 = TensorIndex::sym2(n);
  Vector q(s2.total_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) q[s2.pair(i, j)] = L.killing_gram()(i, j);
  return sparsify(q);
}

StabilizationConfig config(std::uint64_t seed) {
  StabilizationConfig c;
  c.seed = seed;
  return c;
}

}  // namespace

class SigmaTest : public ::testing::TestWithParam<const char*> {};

TEST_P(SigmaTest, DimensionMatchesWeylFormula) {
  const LieAlgebra L = algebra(GetParam());
  const std::size_t n = L.dim();
  const SampledSpace s = sigma_quadrics(L, config(1), Budget{});
  ASSERT_EQ(s.confidence, Confidence::certified) << GetParam();
  const Rational expected = Rational(n * (n + 1) / 2) - weyl_dim_two_theta(L.root_system());
  EXPECT_EQ(Rational(s.kernel_dim), expected) << GetParam();
  ASSERT_TRUE(s.space.has_value());
  EXPECT_TRUE(s.space->contains(killing_quadric(L)));
}

TEST_P(SigmaTest, SamplesLieOnEveryQuadric) {
  const LieAlgebra L = algebra(GetParam());
  const SampledSpace s = sigma_quadrics(L, config(2), Budget{});
  ASSERT_TRUE(s.space.has_value());
  for (const auto& z : sample_orbit(L, 6, 1234)) {
    for (const auto& q : s.space->basis()) ASSERT_EQ(evaluate_quadric(q, z.point), 0);
    // B(z, z) = 0 on the cone
    EXPECT_EQ(L.killing_form(z.point, z.point), 0);
  }
}

TEST_P(SigmaTest, SeedIndependent) {
  const LieAlgebra L = algebra(GetParam());
  const SampledSpace a = sigma_quadrics(L, config(10), Budget{});
  const SampledSpace b = sigma_quadrics(L, config(20), Budget{});
  ASSERT_TRUE(a.space && b.space);
  EXPECT_EQ(*a.space, *b.space);
}

INSTANTIATE_TEST_SUITE_P(Types, SigmaTest, ::testing::Values("A2", "G2", "B3", "D4"));

TEST(Orbit, SamplesAreDeterministicAndOnTheOrbit) {
  const LieAlgebra L = algebra("G2");
  const ContactGrading cg = contact_grading(L);
  const auto a = sample_orbit(L, 4, 9);
  const auto b = sample_orbit(L, 4, 9);
  const auto tail = sample_orbit(L, 2, 9, 2);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].point, b[k].point);
  EXPECT_EQ(tail[0].point, a[2].point);
  EXPECT_EQ(tail[1].point, a[3].point);
  // every tangent has the dimension of the cone, 2 + dim g1
  for (const auto& z : a) EXPECT_EQ(z.tangent.dim(), 2 + cg.dim(1));
  EXPECT_EQ(a[0].word.size(), default_word_length(L));
  const auto gu = gu_pointwise_checks(L, cg, a);
  EXPECT_TRUE(gu.all_passed());
}

TEST(Orbit, ExpAdIsAutomorphism) {
  const LieAlgebra L = algebra("B2");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-2, 2);
  for (std::size_t r = 0; r < L.root_system().size(); ++r) {
    Element x(L.dim()), y(L.dim());
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    const Rational t(1, 2);
    EXPECT_EQ(exp_ad_root(L, r, t, L.bracket(x, y)),
              L.bracket(exp_ad_root(L, r, t, x), exp_ad_root(L, r, t, y)));
  }
}

TEST(Orbit, XiForA2MatchesDenseUnsplitRun) {
  const LieAlgebra L = algebra("A2");
  const SampledSpace sigma = sigma_quadrics(L, config(1), Budget{});
  ASSERT_TRUE(sigma.space.has_value());
  const Subspace dS = spencer_image(L, build_S(L, *sigma.space));
  EXPECT_EQ(dS.dim(), 2 * L.dim() + sigma.space->dim());

  const SampledSpace xi = xi_space(L, config(3), Arithmetic::exact, &dS, 0, Budget{});
  ASSERT_EQ(xi.confidence, Confidence::certified);
  EXPECT_EQ(xi.kernel_dim, 25u);

  StabilizationConfig dense = config(77);
  dense.split_by_weight = false;
  dense.max_batches = 20;
  const SampledSpace ref = xi_space(L, dense, Arithmetic::exact, nullptr, 0, Budget{});
  ASSERT_EQ(ref.confidence, Confidence::certified);
  ASSERT_TRUE(ref.space && xi.space);
  EXPECT_EQ(ref.kernel_dim, 25u);
  EXPECT_EQ(*ref.space, *xi.space);
  EXPECT_EQ(*ref.space, dS);
}

TEST(Orbit, XiPrimeIsTheBracket) {
  for (const char* label : {"A2", "G2"}) {
    const LieAlgebra L = algebra(label);
    const SampledSpace xp = xi_prime_space(L, config(4), Arithmetic::exact, 0, Budget{});
    ASSERT_EQ(xp.confidence, Confidence::certified) << label;
    ASSERT_TRUE(xp.space.has_value());
    ASSERT_EQ(xp.space->dim(), 1u);
    Vector three = bracket_hom(L);
    for (auto& v : three) v *= 3;
    EXPECT_TRUE(xp.space->contains(three));
    EXPECT_TRUE(proportionality(xp.space->basis()[0], sparsify(bracket_hom(L))).has_value());

    const SampledSpace xp2 = xi_prime_space(L, config(5), Arithmetic::exact, 0, Budget{});
    EXPECT_EQ(*xp2.space, *xp.space);

    const SampledSpace xi = xi_space(L, config(4), Arithmetic::exact, nullptr, 0, Budget{});
    ASSERT_TRUE(xi.space.has_value());
    EXPECT_TRUE(xi.space->contains(*xp.space)) << label;
  }
}

TEST(Orbit, BaseConditionRejectsOutsiders) {
  const LieAlgebra L = algebra("A2");
  const Subspace bracket = Subspace::span(L.dim() * oracle::choose(L.dim(), 2), std::vector<Vector>{bracket_hom(L)});
  EXPECT_TRUE(satisfies_at_base(L, bracket, true));
  const Subspace full = Subspace::full(bracket.ambient_dim());
  EXPECT_FALSE(satisfies_at_base(L, full, true));
}

TEST(Orbit, TangentLinesSpanWedge2) {
  const LieAlgebra L = algebra("A2");
  const std::size_t full = oracle::choose(L.dim(), 2);
  StabilizationConfig one = config(6);
  one.batch_size = 1;
  one.max_batches = 1;
  const SpanResult single = tangent_lines_span(L, one, Arithmetic::exact, 0);
  EXPECT_LT(single.achieved, full);

  const SpanResult r = tangent_lines_span(L, config(6), Arithmetic::exact, 0);
  EXPECT_EQ(r.full, full);
  EXPECT_TRUE(r.spans());
  for (std::size_t k = 1; k < r.dims_per_batch.size(); ++k) EXPECT_GE(r.dims_per_batch[k], r.dims_per_batch[k - 1]);

  const SpanResult m = tangent_lines_span(L, config(6), Arithmetic::modular, PrimeSampler(1).next());
  EXPECT_TRUE(m.spans());
}

TEST(Representations, ActionIsAHomomorphism) {
  const LieAlgebra L = algebra("A2");
  const std::size_t n = L.dim();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto kind : {TensorRepresentation::Kind::wedge2, TensorRepresentation::Kind::sym2_dual,
                    TensorRepresentation::Kind::hom_wedge2}) {
    const TensorRepresentation rep(L, kind);
    Vector v(rep.dim());
    for (auto& x : v) x = d(rng);
    const SparseVec sv = sparsify(v);
    for (std::size_t x = 0; x < n; x += 3)
      for (std::size_t y = 1; y < n; y += 2) {
        SparseVec lhs = axpy(rep.act(x, rep.act(y, sv)), -1, rep.act(y, rep.act(x, sv)));
        SparseVec rhs;
        for (const auto& e : L.structure(x, y)) rhs = axpy(rhs, e.value, rep.act(e.index, sv));
        ASSERT_EQ(lhs, rhs) << static_cast<int>(kind) << " " << x << " " << y;
      }
  }
}

TEST(Representations, InvariantsAreInvariant) {
  const LieAlgebra L = algebra("G2");
  const TensorRepresentation sym(L, TensorRepresentation::Kind::sym2_dual);
  EXPECT_TRUE(is_invariant(sym, Subspace::span(sym.dim(), std::vector<SparseVec>{killing_quadric(L)})));
  const TensorRepresentation hom(L, TensorRepresentation::Kind::hom_wedge2);
  EXPECT_TRUE(is_invariant(hom, Subspace::span(hom.dim(), std::vector<Vector>{bracket_hom(L)})));
}

TEST(Representations, SummandCounts) {
  const std::vector<std::pair<const char*, std::size_t>> wedge = {{"A2", 3}, {"G2", 2}, {"B3", 2}};
  for (const auto& [label, count] : wedge) {
    const LieAlgebra L = algebra(label);
    const TensorRepresentation rep(L, TensorRepresentation::Kind::wedge2);
    EXPECT_EQ(count_summands(rep, Subspace::full(rep.dim())), count) << label;
  }
  const LieAlgebra L = algebra("A2");
  const TensorRepresentation rep(L, TensorRepresentation::Kind::wedge2);
  const Subspace line = Subspace::span(rep.dim(), std::vector<SparseVec>{SparseVec{{0, 1}}});
  EXPECT_FALSE(is_invariant(rep, line));
  EXPECT_THROW(count_summands(rep, line), std::invalid_argument);
}

TEST(Representations, WeightBlocks) {
  const std::vector<RootVec> w = {{1, 0}, {0, 0}, {1, 0}, {0, 1}};
  const auto b = weight_blocks(w);
  EXPECT_EQ(b[0], b[2]);
  EXPECT_NE(b[0], b[1]);
  EXPECT_NE(b[1], b[3]);
  const auto one = weight_blocks(w, false);
  for (auto x : one) EXPECT_EQ(x, one[0]);
}

TEST(Constraints, LowerBoundStopsAtTarget) {
  ConstraintAccumulator acc({0, 0, 0}, Arithmetic::exact);
  acc.set_lower_bound(Subspace::span(3, std::vector<Vector>{Vector{1, 1, 1}}));
  EXPECT_FALSE(acc.at_lower_bound());
  acc.add_row(sparsify(Vector{1, -1, 0}));
  acc.add_row(sparsify(Vector{0, 1, -1}));
  EXPECT_TRUE(acc.at_lower_bound());
  EXPECT_EQ(acc.kernel_dim(), 1u);
  EXPECT_EQ(acc.kernel(), Subspace::span(3, std::vector<Vector>{Vector{1, 1, 1}}));
}
