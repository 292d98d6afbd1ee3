#pragma once

// Check pipelines that turn computations into certificates, plus the policy
// deciding which (type, check) pairs carry a claim.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liecert/budget.hpp"
#include "liecert/liealg.hpp"
#include "liecert/rootsys.hpp"

namespace liecert {

enum class Outcome { certified, plateau, unresolved, resource_limit, report_only, failed };

std::string to_string(Outcome o);
/// Accepts the upper-case names used in certificates.
Outcome parse_outcome(const std::string& s);

struct CheckConfig {
  std::uint64_t seed = 0;
  std::uint64_t primes_seed = 0;
  std::size_t prime_count = 3;
  std::size_t sample_batches = 12;
  std::size_t batch_size = 8;
  Budget budget;
  bool timestamps = true;
  /// Unset: algebras are built in memory and nothing is written to disk.
  std::optional<std::filesystem::path> cache_dir;
};

struct Certificate {
  std::string check_name;
  SimpleType type;
  std::size_t dim = 0;
  nlohmann::json claim;
  Outcome outcome = Outcome::unresolved;
  nlohmann::json witnesses = nlohmann::json::object();
  nlohmann::json paper_anchor;
  std::string engine_version;
  /// Set for report-only outcomes and resource limits.
  std::string note;

  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);
};

/// Check names in suite order.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);

/// Reason the pair carries no claim, or nullopt when it is in scope.
std::optional<std::string> exclusion(const std::string& check, SimpleType type);

/// Holds built algebras and shared intermediate results across checks.
class CertifySession {
 public:
  explicit CertifySession(CheckConfig config);
  ~CertifySession();
  CertifySession(const CertifySession&) = delete;
  CertifySession& operator=(const CertifySession&) = delete;

  const CheckConfig& config() const { return config_; }
  const LieAlgebra& algebra(SimpleType t);

  /// Throws std::invalid_argument for an unknown check name or an invalid type.
  Certificate run_check(const std::string& name, SimpleType t);
  std::vector<Certificate> run_suite(const std::vector<SimpleType>& types, const std::vector<std::string>& checks);

  struct Shared;

 private:
  CheckConfig config_;
  std::map<std::string, std::unique_ptr<Shared>> shared_;
  Shared& shared(SimpleType t);
};

Certificate run_check(const std::string& name, SimpleType t, const CheckConfig& config);
std::vector<Certificate> run_suite(const std::vector<SimpleType>& types, const std::vector<std::string>& checks,
                                   const CheckConfig& config);

struct SuiteSummary {
  std::map<Outcome, std::size_t> counts;
  /// Some in-scope check ended PLATEAU, UNRESOLVED or FAILED.
  bool verification_failure = false;
  /// Some check hit the memory or time budget.
  bool resource_limit = false;
};

SuiteSummary summarize(const std::vector<Certificate>& certs);
/// 0 all in-scope checks certified, 1 verification failure, 3 resource limit
/// (a verification failure takes precedence).
int exit_status(const SuiteSummary& s);

nlohmann::json to_json(const std::vector<Certificate>& certs);
std::string summary_table(const std::vector<Certificate>& certs);

}  // namespace liecert
