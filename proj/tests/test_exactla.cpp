#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "liecert/exactla.hpp"
#include "liecert/modular.hpp"
#include "oracle.hpp"

using namespace liecert;

namespace {

struct RandomMatrix {
  std::size_t rows;
  std::size_t cols;
  oracle::Mat dense;
  SparseMat sparse;
};

// Mix of full, sparse and deliberately rank-deficient matrices.
RandomMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<int> style(0, 2);
  RandomMatrix m;
  m.rows = dim(rng);
  m.cols = dim(rng);
  m.dense.assign(m.rows, std::vector<oracle::Q>(m.cols));
  const int s = style(rng);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const bool keep = s != 1 || rng() % 4 == 0;
      if (keep) m.dense[i][j] = entry(rng);
    }
  if (s == 2 && m.rows > 2) {
    // last row is a combination of the first two
    for (std::size_t j = 0; j < m.cols; ++j) m.dense[m.rows - 1][j] = 2 * m.dense[0][j] - 3 * m.dense[1][j];
  }
  SparseMatBuilder b(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.dense[i][j] != 0) b.add(i, j, m.dense[i][j]);
  m.sparse = std::move(b).build();
  return m;
}

oracle::Mat as_dense(const Subspace& s) {
  oracle::Mat out;
  for (const auto& v : s.basis()) out.push_back(densify(v, s.ambient_dim()));
  return out;
}

}  // namespace

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(Rational(-6) / 4), "-3/2");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational("10/-4"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(SparseMat, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(SparseMat(2, 2, {{0, 0, 1}, {0, 0, 2}}), std::invalid_argument);
  EXPECT_THROW(SparseMat(2, 2, {{2, 0, 1}}), std::out_of_range);
  const SparseMat m(2, 3, {{0, 2, 5}, {1, 0, 0}});
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.transposed().transposed(), m);
}

TEST(ExactLA, AgreesWithDenseOracleOn500RandomMatrices) {
  std::mt19937_64 rng(20240611);
  PrimeSampler primes(7);
  const Residue p = primes.next();
  for (int trial = 0; trial < 500; ++trial) {
    const RandomMatrix m = random_matrix(rng);
    const std::size_t r = oracle::rank(m.dense, m.cols);
    ASSERT_EQ(rank(m.sparse), r) << "trial " << trial;

    const Subspace k = kernel(m.sparse);
    ASSERT_EQ(k.dim(), m.cols - r);
    ASSERT_EQ(as_dense(k), oracle::null_space(m.dense, m.cols)) << "trial " << trial;

    const Subspace im = image(m.sparse);
    ASSERT_EQ(as_dense(im), oracle::row_space(oracle::transpose(m.dense, m.cols), m.rows)) << "trial " << trial;

    const auto mr = modular_rank(m.sparse, p);
    ASSERT_TRUE(mr.has_value());
    ASSERT_LE(*mr, r);
  }
}

TEST(ExactLA, KernelIsCanonicalUnderRowPermutation) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomMatrix m = random_matrix(rng);
    std::vector<std::size_t> perm(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Triplet> t;
    for (const auto& e : m.sparse.triplets()) t.push_back({perm[e.row], e.col, e.value});
    const SparseMat shuffled(m.rows, m.cols, std::move(t));
    EXPECT_EQ(kernel(shuffled), kernel(m.sparse));
    EXPECT_EQ(rank(shuffled), rank(m.sparse));
  }
}

TEST(Subspace, SumIntersectAndContainment) {
  const std::size_t n = 4;
  const Vector a{1, 0, 0, 0}, b{0, 1, 1, 0}, c{0, 0, 1, 1};
  const Subspace ab = Subspace::span(n, std::vector<Vector>{a, b});
  const Subspace bc = Subspace::span(n, std::vector<Vector>{b, c});
  EXPECT_EQ(intersect(ab, bc), Subspace::span(n, std::vector<Vector>{b}));
  EXPECT_EQ(sum(ab, bc).dim(), 3u);
  EXPECT_TRUE(sum(ab, bc).contains(ab));
  EXPECT_FALSE(ab.contains(c));
  const auto coords = ab.coordinates(sparsify(Vector{2, 3, 3, 0}));
  ASSERT_TRUE(coords.has_value());
  EXPECT_EQ(coords->size(), 2u);
}

TEST(Modular, PrimesAreInRange) {
  PrimeSampler s(123);
  for (int i = 0; i < 20; ++i) {
    const Residue p = s.next();
    EXPECT_GE(p, Residue{1} << 30);
    EXPECT_LT(p, Residue{1} << 31);
    EXPECT_TRUE(is_prime(p));
  }
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(561));
}

TEST(Modular, UnluckyPrimeThenCertified) {
  PrimeSampler s(5);
  const Residue p = s.next();
  const Residue q = s.next();
  const SparseMat m(1, 1, {{0, 0, Rational(p)}});
  const Subspace zero(1);

  const auto bad = certify_nullity(m, zero, std::vector<Residue>{p});
  EXPECT_FALSE(bad.certified);
  ASSERT_EQ(bad.attempts.size(), 1u);
  EXPECT_EQ(bad.attempts[0].rank, std::optional<std::size_t>(0));

  const auto good = certify_nullity(m, zero, std::vector<Residue>{p, q});
  EXPECT_TRUE(good.certified);
  EXPECT_EQ(good.successes(), 1u);
}

TEST(Modular, DenominatorHitResamples) {
  PrimeSampler s(11);
  const Residue p = s.next();
  const SparseMat m(1, 2, {{0, 0, Rational(1, p)}, {0, 1, 1}});
  EXPECT_FALSE(modular_rank(m, p).has_value());
  const Subspace known = Subspace::span(2, std::vector<Vector>{Vector{-Rational(p), 1}});
  const auto r = certify_nullity(m, known, std::vector<Residue>{p}, 77);
  ASSERT_EQ(r.attempts.size(), 2u);
  EXPECT_FALSE(r.attempts[0].rank.has_value());
  EXPECT_NE(r.attempts[1].prime, p);
  EXPECT_TRUE(r.certified);
}

TEST(Modular, RejectsWrongKnownKernel) {
  const SparseMat m(1, 2, {{0, 0, 1}});
  const Subspace wrong = Subspace::span(2, std::vector<Vector>{Vector{1, 0}});
  EXPECT_THROW(certify_nullity(m, wrong, 1, 1), std::invalid_argument);
}
