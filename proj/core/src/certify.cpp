#include "liecert/certify.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "liecert/cache.hpp"
#include "liecert/grading.hpp"
#include "liecert/modular.hpp"
#include "liecert/operators.hpp"
#include "liecert/orbit.hpp"

namespace liecert {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Names and policy

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::certified:
      return "CERTIFIED";
    case Outcome::plateau:
      return "PLATEAU";
    case Outcome::unresolved:
      return "UNRESOLVED";
    case Outcome::resource_limit:
      return "RESOURCE_LIMIT";
    case Outcome::report_only:
      return "REPORT_ONLY";
    case Outcome::failed:
      return "FAILED";
  }
  return "UNKNOWN";
}

Outcome parse_outcome(const std::string& s) {
  for (Outcome o : {Outcome::certified, Outcome::plateau, Outcome::unresolved, Outcome::resource_limit,
                    Outcome::report_only, Outcome::failed})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"jacobi",      "grading",    "bianchi_kernel", "spencer_injective",
                                                 "sigma",       "xi_equals_dS", "xi_prime",     "span_wedge2",
                                                 "summand_counts", "gu_lemma"};
  return names;
}

bool is_check_name(const std::string& name) {
  const auto& n = check_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

/// Low-rank coincidences: B2 = C2 and D3 = A3.
SimpleType effective_type(SimpleType t) {
  if (t.type == 'B' && t.rank == 2) return {'C', 2};
  if (t.type == 'D' && t.rank == 3) return {'A', 3};
  return t;
}

std::optional<std::size_t> expected_wedge2_summands(SimpleType t) {
  t = effective_type(t);
  switch (t.type) {
    case 'A':
      if (t.rank == 2) return 3;
      return std::nullopt;
    case 'B':
    case 'D':
    case 'E':
    case 'F':
    case 'G':
      return 2;
    default:
      return std::nullopt;
  }
}

/// s = number of irreducible summands of Sigma other than the Killing line.
std::optional<std::size_t> expected_s(SimpleType t) {
  t = effective_type(t);
  switch (t.type) {
    case 'A':
      if (t.rank == 2) return 1;
      return std::nullopt;
    case 'B':
      return 2;
    case 'D':
      return t.rank == 4 ? 3 : 2;
    case 'E':
    case 'F':
    case 'G':
      return 1;
    default:
      return std::nullopt;
  }
}

struct Anchor {
  const char* label;
  const char* statement;
};

Anchor anchor_for(const std::string& check) {
  static const std::map<std::string, Anchor> anchors = {
      {"jacobi", {"chevalley-basis", "[[x, y], z] + [[y, z], x] + [[z, x], y] = 0 for all basis triples"}},
      {"grading",
       {"contact-grading",
        "g = g2 + g1 + g0 + g-1 + g-2 with dim g2 = 1, [g2, g-2] = C E, E acting by i on g_i, "
        "B(g_i, g_j) = 0 unless i + j = 0"}},
      {"bianchi_kernel",
       {"formal-curvature",
        "the kernel of h -> h# on Hom(wedge2 g, g^) is spanned by (u, v) -> ad_[u,v]"}},
      {"spencer_injective", {"spencer-injectivity", "d: Hom(g, g^) -> Hom(wedge2 g, g) has zero kernel"}},
      {"sigma",
       {"quadrics-on-cone", "Sigma = {q in Sym2 g* : q vanishes on the minimal nilpotent orbit}; B in Sigma"}},
      {"xi_equals_dS",
       {"spencer-image", "Xi_Y = d(S) with S = Hom(g, C Id) + ad_g + Sigma_flat and dim d(S) = 2n + dim Sigma"}},
      {"xi_prime", {"strict-torsion", "Xi'_Y is one-dimensional and spanned by the bracket"}},
      {"span_wedge2", {"tangent-lines", "{z ^ w : z in Y^, w in T_z Y^} spans wedge2 g"}},
      {"summand_counts",
       {"irreducible-summands",
        "number of irreducible summands of wedge2 g, and s = (number of summands of Sigma) - 1"}},
      {"gu_lemma",
       {"orbit-pointwise",
        "at z in Y^: [g, z] = T_z; [T_z, z] in C z; [T_z^perp, T_z] in T_z; D_z = {v in T_z : [v, z] = 0} "
        "has codimension one"}},
  };
  return anchors.at(check);
}

json sparse_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(json::array({e.index, to_string(e.value)}));
  return out;
}

std::string subspace_hash(const Subspace& s) {
  std::ostringstream os;
  os << s.ambient_dim() << ' ' << s.dim() << '\n';
  for (const auto& row : s.basis()) {
    for (const auto& e : row) os << e.index << ':' << to_string(e.value) << ' ';
    os << '\n';
  }
  return fnv1a_hex(os.str());
}

Outcome outcome_of(Confidence c) {
  switch (c) {
    case Confidence::certified:
      return Outcome::certified;
    case Confidence::plateau:
      return Outcome::plateau;
    case Confidence::unresolved:
      return Outcome::unresolved;
  }
  return Outcome::unresolved;
}

json sampled_json(const SampledSpace& s) {
  json j;
  j["kernel_dim"] = s.kernel_dim;
  j["ambient_dim"] = s.ambient_dim;
  j["confidence"] = to_string(s.confidence);
  j["certified_by"] = s.certified_by;
  j["arithmetic"] = s.arithmetic == Arithmetic::exact ? "exact" : "modular";
  if (s.arithmetic == Arithmetic::modular) j["prime"] = s.prime;
  j["samples"] = s.samples_used;
  j["rows"] = s.rows_added;
  j["denominator_skips"] = s.denominator_skips;
  j["dims_per_batch"] = s.dims_per_batch;
  if (s.lower_bound_consistent) j["lower_bound_consistent"] = *s.lower_bound_consistent;
  if (s.space && s.confidence == Confidence::certified) j["space_hash"] = subspace_hash(*s.space);
  return j;
}

SparseVec killing_as_quadric(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const auto s2 = TensorIndex::sym2(n);
  SparseVec k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (sgn(L.killing_gram()(i, j)) != 0) k.push_back({s2.pair(i, j), L.killing_gram()(i, j)});
  return k;
}

std::size_t hom_wedge2_dim(std::size_t n) { return n * (n - 1) / 2 * n; }

constexpr std::size_t kExactUnknowns = 2000;

}  // namespace

std::optional<std::string> exclusion(const std::string& check, SimpleType type) {
  if (!is_check_name(check)) throw std::invalid_argument("unknown check '" + check + "'");
  if (check == "jacobi") return std::nullopt;
  const SimpleType t = effective_type(type);
  if (t.type == 'A' && t.rank == 1) return "A1 lies outside the scope of the orbit statements; reported only";
  if (t.type == 'C') return "C_l lies outside the scope of the orbit statements; reported only";
  if (t.type == 'A' && t.rank >= 3) {
    if (check == "xi_equals_dS") return "no claim for A_l with l >= 3; Xi_Y and d(S) reported as computed";
    if (check == "bianchi_kernel") return "no claim for A_l with l != 2; reported only";
    if (check == "summand_counts") return "no claim for A_l with l >= 3; counts reported only";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certificate serialization

json Certificate::to_json() const {
  json j;
  j["check_name"] = check_name;
  j["algebra"] = {{"type", std::string(1, type.type)}, {"rank", type.rank}, {"dim", dim}};
  j["claim"] = claim;
  j["outcome"] = to_string(outcome);
  j["witnesses"] = witnesses;
  j["paper_anchor"] = paper_anchor;
  j["engine_version"] = engine_version;
  if (!note.empty()) j["note"] = note;
  return j;
}

Certificate Certificate::from_json(const json& j) {
  Certificate c;
  c.check_name = j.at("check_name").get<std::string>();
  const auto& a = j.at("algebra");
  const std::string type = a.at("type").get<std::string>();
  if (type.size() != 1) throw std::invalid_argument("certificate: malformed algebra type");
  c.type = {type[0], a.at("rank").get<int>()};
  c.dim = a.at("dim").get<std::size_t>();
  c.claim = j.at("claim");
  c.outcome = parse_outcome(j.at("outcome").get<std::string>());
  c.witnesses = j.at("witnesses");
  c.paper_anchor = j.at("paper_anchor");
  c.engine_version = j.at("engine_version").get<std::string>();
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

json to_json(const std::vector<Certificate>& certs) {
  json out = json::array();
  for (const auto& c : certs) out.push_back(c.to_json());
  return out;
}

// ---------------------------------------------------------------------------
// Session

struct CertifySession::Shared {
  std::optional<LieAlgebra> L;
  std::optional<ContactGrading> cg;
  std::optional<SampledSpace> sigma;
  std::optional<std::string> sigma_limit;
};

CertifySession::CertifySession(CheckConfig config) : config_(std::move(config)) {
  if (config_.batch_size == 0 || config_.sample_batches == 0 || config_.prime_count == 0)
    throw std::invalid_argument("CheckConfig: counts must be positive");
  if (config_.budget.memory_bytes == 0 || config_.budget.time.count() <= 0)
    throw std::invalid_argument("CheckConfig: budgets must be positive");
}

CertifySession::~CertifySession() = default;

CertifySession::Shared& CertifySession::shared(SimpleType t) {
  auto& slot = shared_[t.name()];
  if (!slot) slot = std::make_unique<Shared>();
  return *slot;
}

const LieAlgebra& CertifySession::algebra(SimpleType t) {
  Shared& s = shared(t);
  if (!s.L) {
    if (config_.cache_dir)
      s.L.emplace(Cache(*config_.cache_dir).load_or_build(t));
    else
      s.L.emplace(LieAlgebra::chevalley(build_root_system(t)));
  }
  return *s.L;
}

namespace {

struct CheckContext {
  const LieAlgebra& L;
  const CheckConfig& config;
  const Deadline& deadline;
  StabilizationConfig stab;
  Certificate& cert;
};

Residue first_prime(const CheckConfig& config) { return PrimeSampler(config.primes_seed).next(); }

void check_jacobi(CheckContext& c) {
  const LieAlgebra& L = c.L;
  const std::size_t n = L.dim();
  std::size_t triples = 0;
  std::size_t failures = 0;
  json first;
  auto term = [&](std::size_t i, std::size_t j, std::size_t k) {
    return L.bracket(L.structure(i, j), SparseVec{{k, Rational(1)}});
  };
  for (std::size_t i = 0; i < n; ++i) {
    c.deadline.check();
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        ++triples;
        SparseVec v = axpy(axpy(term(i, j, k), Rational(1), term(j, k, i)), Rational(1), term(k, i, j));
        if (!v.empty()) {
          if (failures++ == 0) first = {L.label(i), L.label(j), L.label(k)};
        }
      }
    }
  }
  c.cert.claim = {{"statement", "Jacobi identity on every basis triple"}, {"triples", triples}};
  c.cert.witnesses["triples_checked"] = triples;
  c.cert.witnesses["failures"] = failures;
  if (failures > 0) c.cert.witnesses["first_failure"] = first;
  c.cert.witnesses["summary"] = std::to_string(triples) + " triples, " + std::to_string(failures) + " failures";
  c.cert.outcome = failures == 0 ? Outcome::certified : Outcome::failed;
}

void check_grading(CheckContext& c, const ContactGrading& cg) {
  const GradingReport r = check_grading(c.L, cg);
  json dims;
  for (int i = -2; i <= 2; ++i) dims[std::to_string(i)] = cg.dim(i);
  json clauses = json::array();
  std::size_t passed = 0;
  for (const auto& cl : r.clauses) {
    clauses.push_back({{"name", cl.name}, {"passed", cl.passed}, {"detail", cl.detail}});
    passed += cl.passed ? 1 : 0;
  }
  c.cert.claim = {{"statement", "contact grading clauses"}, {"clauses", r.clauses.size()}};
  c.cert.witnesses["level_dims"] = dims;
  c.cert.witnesses["clauses"] = clauses;
  c.cert.witnesses["summary"] = std::to_string(passed) + "/" + std::to_string(r.clauses.size()) + " clauses";
  c.cert.outcome = r.all_passed() ? Outcome::certified : Outcome::failed;
}

void check_bianchi(CheckContext& c) {
  c.cert.claim = {{"statement", "dim K(g^) = 1, spanned by the bracket element"}, {"expected_dim", 1}};
  const CurvatureResult r = formal_curvature_space(c.L, SolveMode::automatic, c.config.budget,
                                                   PrimePolicy{c.config.primes_seed, c.config.prime_count}, c.deadline);
  auto& w = c.cert.witnesses;
  w["rows"] = r.rows;
  w["cols"] = r.cols;
  if (r.mode == SolveMode::exact) {
    w["mode"] = "exact";
    w["kernel_dim"] = r.kernel->dim();
    if (r.kernel->dim() == 1) w["generator"] = sparse_json(r.kernel->basis().front());
    if (r.scale) w["scale_to_bracket"] = to_string(*r.scale);
    const bool ok = r.kernel->dim() == 1 && r.scale.has_value();
    w["summary"] = "exact kernel dim " + std::to_string(r.kernel->dim()) +
                   (r.scale ? ", generator = " + to_string(*r.scale) + " * bracket" : "");
    c.cert.outcome = ok ? Outcome::certified : Outcome::failed;
  } else {
    const auto& nl = *r.nullity;
    w["mode"] = "modular";
    w["known_kernel"] = "bracket_element";
    w["target_rank"] = nl.target_rank;
    json attempts = json::array();
    for (const auto& a : nl.attempts) {
      json aj = {{"prime", a.prime}};
      aj["rank"] = a.rank ? json(*a.rank) : json(nullptr);
      attempts.push_back(aj);
    }
    w["primes"] = attempts;
    w["primes_seed"] = c.config.primes_seed;
    w["successes"] = nl.successes();
    w["summary"] = "modular: " + std::to_string(nl.successes()) + "/" + std::to_string(nl.attempts.size()) +
                   " primes reach rank " + std::to_string(nl.target_rank);
    c.cert.outcome = nl.certified ? Outcome::certified : Outcome::unresolved;
  }
}

void check_spencer(CheckContext& c) {
  const std::size_t n = c.L.dim();
  c.cert.claim = {{"statement", "d: Hom(g, g^) -> Hom(wedge2 g, g) is injective"}, {"expected_rank", n * (n + 1)}};
  const std::uint64_t rows = static_cast<std::uint64_t>(n) * (n - 1) / 2 * n;
  require_dense_footprint(c.config.budget, rows, static_cast<std::uint64_t>(n) * (n + 1), "Spencer matrix");
  const SparseMat d = spencer_matrix(c.L, Codomain::hat);
  const std::size_t rk = rank(d, c.deadline);
  c.cert.witnesses["rows"] = d.rows();
  c.cert.witnesses["cols"] = d.cols();
  c.cert.witnesses["rank"] = rk;
  c.cert.witnesses["summary"] = "exact rank " + std::to_string(rk) + " of " + std::to_string(d.cols());
  c.cert.outcome = rk == d.cols() ? Outcome::certified : Outcome::failed;
}

}  // namespace

Certificate CertifySession::run_check(const std::string& name, SimpleType t) {
  if (!is_check_name(name)) throw std::invalid_argument("unknown check '" + name + "'");
  if (!is_valid_type(t.type, t.rank)) throw std::invalid_argument("no simple Lie algebra of type " + t.name());

  Certificate cert;
  cert.check_name = name;
  cert.type = t;
  const Anchor a = anchor_for(name);
  cert.paper_anchor = {{"label", a.label}, {"statement", a.statement}};
  cert.engine_version = engine_version_hash();
  cert.witnesses["seed"] = config_.seed;

  const auto started = std::chrono::steady_clock::now();
  const Deadline deadline(config_.budget.time);
  try {
    const LieAlgebra& L = algebra(t);
    cert.dim = L.dim();
    Shared& sh = shared(t);
    CheckContext c{L, config_, deadline, {}, cert};
    c.stab.seed = config_.seed;
    c.stab.batch_size = config_.batch_size;
    c.stab.max_batches = config_.sample_batches;

    auto get_cg = [&]() -> const ContactGrading& {
      if (!sh.cg) sh.cg = contact_grading(L);
      return *sh.cg;
    };
    auto get_sigma = [&]() -> const SampledSpace& {
      if (sh.sigma_limit) throw ResourceLimitExceeded(*sh.sigma_limit);
      if (!sh.sigma) {
        try {
          sh.sigma = sigma_quadrics(L, c.stab, config_.budget, deadline);
        } catch (const ResourceLimitExceeded& e) {
          sh.sigma_limit = e.what();
          throw;
        }
      }
      return *sh.sigma;
    };
    const std::size_t n = L.dim();
    auto& w = cert.witnesses;

    if (name == "jacobi") {
      check_jacobi(c);
    } else if (name == "grading") {
      check_grading(c, get_cg());
    } else if (name == "bianchi_kernel") {
      check_bianchi(c);
    } else if (name == "spencer_injective") {
      check_spencer(c);
    } else if (name == "sigma") {
      cert.claim = {{"statement", "Sigma = quadrics vanishing on the orbit cone, containing the Killing form"}};
      const SampledSpace& s = get_sigma();
      const bool killing = s.space->contains(killing_as_quadric(L));
      w["sigma"] = sampled_json(s);
      w["dim"] = s.kernel_dim;
      w["killing_in_sigma"] = killing;
      w["basis_hash"] = subspace_hash(*s.space);
      w["summary"] = "dim Sigma " + std::to_string(s.kernel_dim) + " (" + to_string(s.confidence) +
                     (s.certified_by.empty() ? "" : " by " + s.certified_by) + ")";
      cert.outcome = !killing ? Outcome::failed : outcome_of(s.confidence);
    } else if (name == "xi_equals_dS") {
      cert.claim = {{"statement", "Xi_Y = d(S), dim = 2n + dim Sigma, d injective on S"}};
      const SampledSpace& s = get_sigma();
      w["sigma_dim"] = s.kernel_dim;
      w["sigma_confidence"] = to_string(s.confidence);
      const Subspace S = build_S(L, *s.space);
      const Subspace dS = spencer_image(L, S);
      const std::size_t expected = 2 * n + s.kernel_dim;
      cert.claim["expected_dim"] = expected;
      w["dim_S"] = S.dim();
      w["dim_dS"] = dS.dim();
      w["dS_basis_hash"] = subspace_hash(dS);
      const std::size_t N = hom_wedge2_dim(n);
      const Arithmetic ar = N <= kExactUnknowns ? Arithmetic::exact : Arithmetic::modular;
      const Residue p = ar == Arithmetic::modular ? first_prime(config_) : 0;
      try {
        const SampledSpace xi = xi_space(L, c.stab, ar, &dS, p, config_.budget, deadline);
        w["xi"] = sampled_json(xi);
        w["dS_in_xi"] = "proved: d(S) is g-invariant and satisfies the condition at x_theta";
        const bool sandwich = xi.confidence == Confidence::certified && xi.certified_by == "lower_bound" &&
                              xi.lower_bound_consistent.value_or(false);
        w["summary"] = "dim Xi_Y " + std::to_string(xi.kernel_dim) + ", dim d(S) " + std::to_string(dS.dim()) +
                       ", 2n + dim Sigma = " + std::to_string(expected);
        if (s.confidence != Confidence::certified) {
          cert.outcome = outcome_of(s.confidence);
        } else if (dS.dim() != S.dim() || dS.dim() != expected) {
          cert.outcome = Outcome::failed;
        } else if (sandwich) {
          cert.outcome = Outcome::certified;
        } else if (xi.confidence == Confidence::certified) {
          cert.outcome = Outcome::failed;  // Xi_Y pinned exactly and larger than d(S)
        } else {
          cert.outcome = outcome_of(xi.confidence);
        }
      } catch (const std::invalid_argument& e) {
        w["dS_in_xi"] = std::string("refuted: ") + e.what();
        w["summary"] = "d(S) is not contained in Xi_Y";
        cert.outcome = Outcome::failed;
      }
    } else if (name == "xi_prime") {
      cert.claim = {{"statement", "dim Xi'_Y = 1, spanned by the bracket"}, {"expected_dim", 1}};
      const std::size_t N = hom_wedge2_dim(n);
      const Arithmetic ar = N <= kExactUnknowns ? Arithmetic::exact : Arithmetic::modular;
      const Residue p = ar == Arithmetic::modular ? first_prime(config_) : 0;
      const SampledSpace xp = xi_prime_space(L, c.stab, ar, p, config_.budget, deadline);
      w["xi_prime"] = sampled_json(xp);
      bool generator_ok = xp.space.has_value() && xp.space->dim() == 1;
      if (generator_ok) {
        const auto scale = proportionality(xp.space->basis().front(), sparsify(bracket_hom(L)));
        generator_ok = scale.has_value();
        if (scale) w["scale_to_bracket"] = to_string(*scale);
      }
      w["summary"] = "dim Xi'_Y " + std::to_string(xp.kernel_dim) + " (" + to_string(xp.confidence) + ")";
      if (xp.confidence != Confidence::certified)
        cert.outcome = outcome_of(xp.confidence);
      else
        cert.outcome = xp.kernel_dim == 1 && generator_ok ? Outcome::certified : Outcome::failed;
    } else if (name == "span_wedge2") {
      const std::size_t full = n * (n - 1) / 2;
      cert.claim = {{"statement", "the tangent lines span wedge2 g"}, {"expected_dim", full}};
      require_dense_footprint(config_.budget, full, full, "wedge2 span");
      const Residue p = first_prime(config_);
      const SpanResult r = tangent_lines_span(L, c.stab, Arithmetic::modular, p, deadline);
      w["achieved"] = r.achieved;
      w["full"] = r.full;
      w["prime"] = p;
      w["primes_seed"] = config_.primes_seed;
      w["samples"] = r.samples_used;
      w["dims_per_batch"] = r.dims_per_batch;
      w["summary"] = "span " + std::to_string(r.achieved) + "/" + std::to_string(r.full) + " (rank mod p)";
      cert.outcome = r.spans() ? Outcome::certified : Outcome::unresolved;
    } else if (name == "summand_counts") {
      const auto ew = expected_wedge2_summands(t);
      const auto es = expected_s(t);
      cert.claim = {{"statement", "summand counts of wedge2 g and of Sigma"}};
      if (ew) cert.claim["expected_wedge2_summands"] = *ew;
      if (es) cert.claim["expected_s"] = *es;
      const TensorRepresentation w2(L, TensorRepresentation::Kind::wedge2);
      require_dense_footprint(config_.budget, w2.dim() * L.rank(), w2.dim(), "wedge2 raising operators");
      const std::size_t cw = count_summands(w2, Subspace::full(w2.dim()), deadline);
      w["wedge2_summands"] = cw;
      const SampledSpace& s = get_sigma();
      w["sigma_confidence"] = to_string(s.confidence);
      if (s.confidence != Confidence::certified) {
        // An uncertified kernel need not be a submodule, so there is nothing to count.
        w["summary"] = "wedge2 g: " + std::to_string(cw) + " summands; Sigma not pinned down";
        cert.outcome = outcome_of(s.confidence);
      } else {
        const TensorRepresentation s2(L, TensorRepresentation::Kind::sym2_dual);
        const std::size_t cs = count_summands(s2, *s.space, deadline);
        w["sigma_summands"] = cs;
        w["s"] = cs - 1;
        w["summary"] = "wedge2 g: " + std::to_string(cw) + " summands; Sigma: " + std::to_string(cs) + " (s = " +
                       std::to_string(cs - 1) + ")";
        const bool match = (!ew || *ew == cw) && (!es || *es == cs - 1);
        cert.outcome = match ? Outcome::certified : Outcome::failed;
      }
    } else if (name == "gu_lemma") {
      const std::size_t count = std::max<std::size_t>(32, 4 * config_.batch_size);
      cert.claim = {{"statement", "pointwise orbit clauses at sampled points"}, {"samples", count}};
      const auto samples = sample_orbit(L, count, config_.seed);
      const GuReport r = gu_pointwise_checks(L, get_cg(), samples, deadline);
      std::size_t i_ok = 0, ii_ok = 0, iii_ok = 0, iv_ok = 0;
      for (const auto& s : r.samples) {
        i_ok += s.tangent_is_translate;
        ii_ok += s.bracket_into_line;
        iii_ok += s.perp_preserves_tangent;
        iv_ok += s.dhat_commutes;
      }
      w["samples"] = r.samples.size();
      w["tangent_dim"] = r.samples.empty() ? 0 : r.samples.front().tangent_dim;
      w["base_tangent_matches_grading"] = r.base_tangent_matches_grading;
      w["base_dhat_matches_grading"] = r.base_dhat_matches_grading;
      w["clause_passes"] = {{"tangent_is_translate", i_ok},
                            {"bracket_into_line", ii_ok},
                            {"perp_preserves_tangent", iii_ok},
                            {"dhat_codim_one_and_commutes", iv_ok}};
      w["summary"] = std::to_string(r.samples.size()) + " samples, all clauses " + (r.all_passed() ? "pass" : "FAIL");
      cert.outcome = r.all_passed() ? Outcome::certified : Outcome::failed;
    }
  } catch (const ResourceLimitExceeded& e) {
    cert.outcome = Outcome::resource_limit;
    cert.note = e.what();
    cert.witnesses["summary"] = std::string("resource limit: ") + e.what();
  } catch (const std::exception& e) {
    // An internal consistency check fired; the claim is not established.
    cert.outcome = Outcome::failed;
    cert.note = e.what();
    cert.witnesses["summary"] = std::string("error: ") + e.what();
  }
  if (cert.dim == 0) cert.dim = static_cast<std::size_t>(t.rank);  // algebra not built
  if (auto why = exclusion(name, t); why && cert.outcome != Outcome::resource_limit) {
    cert.witnesses["computed_outcome"] = to_string(cert.outcome);
    cert.outcome = Outcome::report_only;
    cert.note = *why;
  }
  if (config_.timestamps) {
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
    cert.witnesses["wall_seconds"] = took.count();
  }
  return cert;
}

std::vector<Certificate> CertifySession::run_suite(const std::vector<SimpleType>& types,
                                                   const std::vector<std::string>& checks) {
  for (const auto& c : checks)
    if (!is_check_name(c)) throw std::invalid_argument("unknown check '" + c + "'");
  std::vector<Certificate> out;
  for (const auto& t : types)
    for (const auto& c : checks) out.push_back(run_check(c, t));
  return out;
}

Certificate run_check(const std::string& name, SimpleType t, const CheckConfig& config) {
  CertifySession s(config);
  return s.run_check(name, t);
}

std::vector<Certificate> run_suite(const std::vector<SimpleType>& types, const std::vector<std::string>& checks,
                                   const CheckConfig& config) {
  CertifySession s(config);
  return s.run_suite(types, checks);
}

SuiteSummary summarize(const std::vector<Certificate>& certs) {
  SuiteSummary s;
  for (const auto& c : certs) {
    ++s.counts[c.outcome];
    switch (c.outcome) {
      case Outcome::plateau:
      case Outcome::unresolved:
      case Outcome::failed:
        s.verification_failure = true;
        break;
      case Outcome::resource_limit:
        s.resource_limit = true;
        break;
      default:
        break;
    }
  }
  return s;
}

int exit_status(const SuiteSummary& s) {
  if (s.verification_failure) return 1;
  if (s.resource_limit) return 3;
  return 0;
}

std::string summary_table(const std::vector<Certificate>& certs) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "type" << std::setw(19) << "check" << std::setw(16) << "outcome" << "detail\n";
  for (const auto& c : certs) {
    std::string detail = c.witnesses.contains("summary") ? c.witnesses.at("summary").get<std::string>() : "";
    if (!c.note.empty() && c.outcome == Outcome::report_only) detail += " [" + c.note + "]";
    os << std::setw(6) << c.type.name() << std::setw(19) << c.check_name << std::setw(16) << to_string(c.outcome)
       << detail << '\n';
  }
  const SuiteSummary s = summarize(certs);
  os << "summary:";
  for (const auto& [o, k] : s.counts) os << ' ' << to_string(o) << '=' << k;
  os << '\n';
  return os.str();
}

}  // namespace liecert
