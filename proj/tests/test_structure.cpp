#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "liecert/cache.hpp"
#include "liecert/grading.hpp"
#include "liecert/liealg.hpp"
#include "liecert/rootsys.hpp"

using namespace liecert;

namespace {

struct TypeFacts {
  const char* label;
  std::size_t roots;
  RootVec theta;
  int dual_coxeter;
};

// Standard tables: root counts, highest roots in Bourbaki numbering and
// dual Coxeter numbers.
const std::vector<TypeFacts>& facts() {
  static const std::vector<TypeFacts> f = {
      {"A1", 2, {1}, 2},
      {"A2", 6, {1, 1}, 3},
      {"A3", 12, {1, 1, 1}, 4},
      {"B2", 8, {1, 2}, 3},
      {"B3", 18, {1, 2, 2}, 5},
      {"C3", 18, {2, 2, 1}, 4},
      {"D4", 24, {1, 2, 1, 1}, 6},
      {"G2", 12, {3, 2}, 4},
      {"F4", 48, {2, 3, 4, 2}, 9},
      {"E6", 72, {1, 2, 2, 3, 2, 1}, 12},
      {"E7", 126, {2, 2, 3, 4, 3, 2, 1}, 18},
      {"E8", 240, {2, 3, 4, 6, 5, 4, 3, 2}, 30},
  };
  return f;
}

Element random_element(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Element v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(RootSystem, CountsAndHighestRoots) {
  for (const auto& f : facts()) {
    const RootSystem rs = build_root_system(parse_type(f.label));
    EXPECT_EQ(rs.size(), f.roots) << f.label;
    EXPECT_EQ(rs.highest_root(), f.theta) << f.label;
    for (std::size_t i = 0; i < rs.size() / 2; ++i) EXPECT_FALSE(rs.is_positive(i));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      RootVec neg = rs.roots()[i];
      for (auto& c : neg) c = -c;
      EXPECT_EQ(rs.roots()[rs.negative_index(i)], neg);
    }
  }
}

TEST(RootSystem, RejectsInvalidLabels) {
  EXPECT_THROW(parse_type("B1"), std::invalid_argument);
  EXPECT_THROW(parse_type("E9"), std::invalid_argument);
  EXPECT_THROW(parse_type("G3"), std::invalid_argument);
  EXPECT_THROW(parse_type("X2"), std::invalid_argument);
  EXPECT_THROW(parse_type("A"), std::invalid_argument);
  EXPECT_EQ(parse_type("g2"), (SimpleType{'G', 2}));
}

TEST(RootSystem, CartanMatrixMatchesPairing) {
  for (const char* label : {"B3", "C3", "G2", "F4"}) {
    const RootSystem rs = build_root_system(parse_type(label));
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        const RootVec& ai = rs.roots()[rs.simple_root_index(i)];
        const RootVec& aj = rs.roots()[rs.simple_root_index(j)];
        EXPECT_EQ(rs.cartan_matrix()[i][j], pairing(rs, ai, aj)) << label;
      }
  }
}

class AlgebraTest : public ::testing::TestWithParam<const char*> {};

TEST_P(AlgebraTest, JacobiOnAllBasisTriples) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type(GetParam())));
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto ei = sparsify(L.basis_vector(i));
        const auto ej = sparsify(L.basis_vector(j));
        const auto ek = sparsify(L.basis_vector(k));
        SparseVec s = L.bracket(ei, L.bracket(ej, ek));
        s = axpy(s, 1, L.bracket(ej, L.bracket(ek, ei)));
        s = axpy(s, 1, L.bracket(ek, L.bracket(ei, ej)));
        ASSERT_TRUE(s.empty()) << GetParam() << " " << i << " " << j << " " << k;
      }
}

TEST_P(AlgebraTest, AdjointIsHomomorphism) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type(GetParam())));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const Element x = random_element(L.dim(), rng);
    const Element y = random_element(L.dim(), rng);
    const DenseMat ax = L.ad_matrix(x), ay = L.ad_matrix(y);
    EXPECT_EQ(L.ad_matrix(L.bracket(x, y)), ax * ay - ay * ax);
  }
}

TEST_P(AlgebraTest, KillingFormIsTraceOfAdProduct) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type(GetParam())));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const Element x = random_element(L.dim(), rng);
    const Element y = random_element(L.dim(), rng);
    EXPECT_EQ(L.killing_form(x, y), (L.ad_matrix(x) * L.ad_matrix(y)).trace());
  }
  EXPECT_EQ(L.killing_gram() * L.killing_gram_inverse(), DenseMat::identity(L.dim()));
}

TEST_P(AlgebraTest, StructureConstantsAreIntegers) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type(GetParam())));
  for (const auto& v : L.structure_table())
    for (const auto& e : v) EXPECT_EQ(e.value.get_den(), 1);
}

TEST_P(AlgebraTest, GradingDimensionsAndClauses) {
  const auto t = parse_type(GetParam());
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(t));
  const ContactGrading cg = contact_grading(L);
  int hv = 0;
  for (const auto& f : facts())
    if (parse_type(f.label) == t) hv = f.dual_coxeter;
  ASSERT_GT(hv, 0);
  // dim g1 = 2 h^vee - 4 for every simple type
  const std::size_t g1 = t.type == 'A' && t.rank == 1 ? 0 : static_cast<std::size_t>(2 * hv - 4);
  EXPECT_EQ(cg.dim(2), 1u);
  EXPECT_EQ(cg.dim(-2), 1u);
  EXPECT_EQ(cg.dim(1), g1);
  EXPECT_EQ(cg.dim(-1), g1);
  EXPECT_EQ(cg.dim(0), L.dim() - 2 - 2 * g1);
  const GradingReport r = check_grading(L, cg);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.clauses.size(), 12u);
}

INSTANTIATE_TEST_SUITE_P(Types, AlgebraTest, ::testing::Values("A1", "A2", "B2", "G2", "B3", "C3", "D4"));

TEST(Cache, StructureRoundTripIsBitExact) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type("G2")));
  std::stringstream s;
  write_structure(s, L);
  std::string hash;
  const LieAlgebra back = read_structure(s, &hash);
  EXPECT_EQ(back, L);
  EXPECT_EQ(hash, engine_version_hash());
  std::stringstream again;
  write_structure(again, back);
  std::stringstream first;
  write_structure(first, L);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Cache, RejectsCorruptStructure) {
  const LieAlgebra L = LieAlgebra::chevalley(build_root_system(parse_type("A2")));
  std::stringstream s;
  write_structure(s, L);
  const std::string text = s.str();

  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_structure(truncated), std::runtime_error);

  std::string bad_header = text;
  bad_header.replace(bad_header.find("dim 8"), 5, "dim 9");
  std::istringstream h(bad_header);
  EXPECT_THROW(read_structure(h), std::runtime_error);

  std::istringstream garbage(text + "0 1 2 3 1\n");
  EXPECT_THROW(read_structure(garbage), std::runtime_error);

  std::istringstream not_cache("hello world\n");
  EXPECT_THROW(read_structure(not_cache), std::runtime_error);
}

TEST(Cache, MatrixRoundTrip) {
  const SparseMat m(3, 4, {{0, 1, Rational(-2, 3)}, {2, 3, 5}, {1, 0, 1}});
  std::stringstream s;
  write_matrix(s, m, {"spencer", {'G', 2}, engine_version_hash()});
  MatrixHeader h;
  EXPECT_EQ(read_matrix(s, &h), m);
  EXPECT_EQ(h.name, "spencer");
  EXPECT_EQ(h.type, (SimpleType{'G', 2}));
}

TEST(Cache, LoadOrBuildReusesAndRepairs) {
  const auto dir = std::filesystem::temp_directory_path() / ("liecert-test-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const Cache cache(dir);
  bool loaded = true;
  const LieAlgebra a = cache.load_or_build({'B', 2}, &loaded);
  EXPECT_FALSE(loaded);
  const LieAlgebra b = cache.load_or_build({'B', 2}, &loaded);
  EXPECT_TRUE(loaded);
  EXPECT_EQ(a, b);

  {
    std::ofstream f(cache.structure_path({'B', 2}), std::ios::trunc);
    f << "liecert-structure 1\ntype B rank 2 dim 10 hash 0000000000000000\nentries 0\n";
  }
  const LieAlgebra c = cache.load_or_build({'B', 2}, &loaded);
  EXPECT_FALSE(loaded);
  EXPECT_EQ(c, a);
  std::filesystem::remove_all(dir);
}
