// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance is
// exact; the expected values below are pinned here, not read from the engine.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "liecert/certify.hpp"
#include "liecert/orbit.hpp"
#include "oracle.hpp"

using namespace liecert;
using nlohmann::json;

namespace {

const std::vector<SimpleType> kTypes = {{'A', 2}, {'G', 2}, {'B', 3}, {'D', 4}};

const std::map<std::string, std::size_t> kWedge2Summands = {{"A2", 3}, {"G2", 2}, {"B3", 2}, {"D4", 2}};
const std::map<std::string, std::size_t> kS = {{"A2", 1}, {"G2", 1}, {"B3", 2}, {"D4", 3}};
constexpr std::size_t kA2XiDim = 25;
constexpr std::size_t kMinGuSamples = 32;
constexpr int kOracleMatrices = 500;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

CheckConfig quiet(std::uint64_t seed) {
  CheckConfig c;
  c.seed = seed;
  c.timestamps = false;
  return c;
}

class Runner {
 public:
  explicit Runner(std::uint64_t seed) : session_(quiet(seed)) {}

  const Certificate& get(const std::string& check, SimpleType t) {
    const std::string key = check + "/" + t.name();
    auto it = certs_.find(key);
    if (it == certs_.end()) it = certs_.emplace(key, session_.run_check(check, t)).first;
    return it->second;
  }

  const LieAlgebra& algebra(SimpleType t) { return session_.algebra(t); }

 private:
  CertifySession session_;
  std::map<std::string, Certificate> certs_;
};

bool certified(const Certificate& c) { return c.outcome == Outcome::certified; }

std::string label(const Certificate& c) { return c.type.name() + " " + c.check_name + " " + to_string(c.outcome); }

Result bianchi(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("bianchi_kernel", t);
    res.require(certified(c), label(c));
    const json& w = c.witnesses;
    const bool small = t.name() == "A2" || t.name() == "G2";
    const std::string mode = w.value("mode", "");
    res.require(mode == (small ? "exact" : "modular"), t.name() + " mode " + mode);
    if (mode == "exact") {
      res.require(w.value("kernel_dim", 0) == 1, t.name() + " kernel dim");
      res.require(w.contains("scale_to_bracket"), t.name() + " generator not proportional to the bracket");
    } else if (mode == "modular") {
      res.require(w.value("successes", 0) >= 1, t.name() + " no prime reached the target rank");
      res.require(w.value("known_kernel", "") == "bracket_element", t.name() + " known kernel");
    }
  }
  return res;
}

Result spencer_image_equality(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("xi_equals_dS", t);
    res.require(certified(c), label(c));
    const json& w = c.witnesses;
    const std::size_t n = r.algebra(t).dim();
    const std::size_t sigma = w.value("sigma_dim", 0);
    res.require(w.value("dim_dS", 0) == 2 * n + sigma, t.name() + " dim dS != 2n + dim Sigma");
    res.require(w.contains("xi") && w["xi"].value("kernel_dim", 0) == w.value("dim_dS", 0),
                t.name() + " dim Xi != dim dS");
    res.require(w.value("dS_in_xi", "").rfind("proved", 0) == 0, t.name() + " dS in Xi not proved");
    if (t.name() == "A2") res.require(w["xi"].value("kernel_dim", 0) == kA2XiDim, "A2 dim Xi != 25");
  }
  // Independent dense run for A2: no weight splitting, no lower bound, other seed.
  const LieAlgebra& L = r.algebra({'A', 2});
  StabilizationConfig dense;
  dense.seed = 0xA2;
  dense.split_by_weight = false;
  dense.max_batches = 20;
  const SampledSpace ref = xi_space(L, dense, Arithmetic::exact, nullptr, 0, Budget{});
  res.require(ref.confidence == Confidence::certified && ref.kernel_dim == kA2XiDim,
              "dense A2 oracle dim " + std::to_string(ref.kernel_dim));
  return res;
}

Result xi_prime(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("xi_prime", t);
    res.require(certified(c), label(c));
    res.require(c.witnesses["xi_prime"].value("kernel_dim", 0) == 1, t.name() + " dim Xi' != 1");
    res.require(c.witnesses.contains("scale_to_bracket"), t.name() + " generator not proportional to the bracket");
  }
  return res;
}

Result tangent_span(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("span_wedge2", t);
    const std::size_t n = r.algebra(t).dim();
    res.require(certified(c), label(c));
    res.require(c.witnesses.value("achieved", 0) == n * (n - 1) / 2, t.name() + " span short of n(n-1)/2");
  }
  return res;
}

Result summands(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("summand_counts", t);
    res.require(certified(c), label(c));
    res.require(c.witnesses.value("wedge2_summands", 0) == kWedge2Summands.at(t.name()),
                t.name() + " wedge2 summands");
    res.require(c.witnesses.value("s", 0) == kS.at(t.name()), t.name() + " s");
  }
  return res;
}

Result structural(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    for (const char* check : {"jacobi", "grading", "gu_lemma"}) {
      const Certificate& c = r.get(check, t);
      res.require(certified(c), label(c));
    }
    const Certificate& g = r.get("grading", t);
    bool orth = false;
    for (const auto& cl : g.witnesses["clauses"])
      if (cl.value("name", "") == "killing_orthogonal") orth = cl.value("passed", false);
    res.require(orth, t.name() + " B(g_i, g_j) = 0 for i + j != 0");
    const Certificate& gu = r.get("gu_lemma", t);
    res.require(gu.claim.value("samples", 0) >= kMinGuSamples, t.name() + " fewer than 32 samples");
  }
  return res;
}

Result spencer_injective(Runner& r) {
  Result res;
  for (const auto& t : kTypes) {
    const Certificate& c = r.get("spencer_injective", t);
    const std::size_t n = r.algebra(t).dim();
    res.require(certified(c), label(c));
    res.require(c.witnesses.value("rank", 0) == n * (n + 1), t.name() + " rank short of n(n+1)");
  }
  return res;
}

std::string space_hash(const Certificate& c, const char* field) {
  if (!c.witnesses.contains(field)) return "";
  return c.witnesses[field].value("space_hash", "");
}

Result determinism(Runner& first) {
  Result res;
  Runner again(0);
  Runner other(1);
  for (const auto& t : kTypes) {
    for (const auto& check : check_names()) {
      const Certificate& a = first.get(check, t);
      const Certificate& b = again.get(check, t);
      res.require(a.to_json() == b.to_json(), t.name() + " " + check + " differs between identical runs");
    }
    const auto& s0 = first.get("sigma", t);
    const auto& s1 = other.get("sigma", t);
    res.require(!space_hash(s0, "sigma").empty() && space_hash(s0, "sigma") == space_hash(s1, "sigma"),
                t.name() + " Sigma differs across seeds");
    const auto& x0 = first.get("xi_equals_dS", t);
    const auto& x1 = other.get("xi_equals_dS", t);
    res.require(!space_hash(x0, "xi").empty() && space_hash(x0, "xi") == space_hash(x1, "xi"),
                t.name() + " Xi differs across seeds");
    const auto& p0 = first.get("xi_prime", t);
    const auto& p1 = other.get("xi_prime", t);
    res.require(!space_hash(p0, "xi_prime").empty() && space_hash(p0, "xi_prime") == space_hash(p1, "xi_prime"),
                t.name() + " Xi' differs across seeds");
  }
  return res;
}

Result oracle_equivalence() {
  Result res;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_int_distribution<int> entry(-9, 9);
  const Residue p = PrimeSampler(0).next();
  for (int trial = 0; trial < kOracleMatrices; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    const bool sparse = rng() % 2 == 0;
    oracle::Mat dense(rows, std::vector<oracle::Q>(cols));
    SparseMatBuilder b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (sparse && rng() % 3 != 0) continue;
        dense[i][j] = entry(rng);
        if (dense[i][j] != 0) b.add(i, j, dense[i][j]);
      }
    const SparseMat m = std::move(b).build();
    const std::size_t r = oracle::rank(dense, cols);
    const Subspace ker = kernel(m);
    oracle::Mat k;
    for (const auto& v : ker.basis()) k.push_back(densify(v, cols));
    const auto mr = modular_rank(m, p);
    const bool ok = rank(m) == r && k == oracle::null_space(dense, cols) && mr && *mr <= r;
    if (!ok) res.require(false, "matrix " + std::to_string(trial));
  }
  return res;
}

}  // namespace

int main() {
  Runner runner(0);
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"1 Bianchi kernel is the bracket line", [&] { return bianchi(runner); }},
      {"2 Xi_Y = dS, dim 2n + dim Sigma", [&] { return spencer_image_equality(runner); }},
      {"3 Xi'_Y is the bracket line", [&] { return xi_prime(runner); }},
      {"4 tangent lines span wedge2 g", [&] { return tangent_span(runner); }},
      {"5 summand counts", [&] { return summands(runner); }},
      {"6 Jacobi, grading and orbit clauses", [&] { return structural(runner); }},
      {"7 Spencer injective on Hom(g, g^)", [&] { return spencer_injective(runner); }},
      {"8 determinism and seed independence", [&] { return determinism(runner); }},
      {"9 sparse vs dense oracle on 500 matrices", [] { return oracle_equivalence(); }},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Result r = run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %s  (%.1f s)%s%s\n", r.pass ? "PASS" : "FAIL", name.c_str(), secs,
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    std::fflush(stdout);
    failures += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
