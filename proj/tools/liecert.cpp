// liecert: build Chevalley algebras, run checks, emit certificates.
//
// Exit status: 0 all in-scope checks certified, 1 verification failure,
// 2 usage error, 3 resource limit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "liecert/cache.hpp"
#include "liecert/certify.hpp"
#include "liecert/grading.hpp"

namespace {

using namespace liecert;

constexpr int kUsage = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::string> expand_checks(const std::string& s) {
  if (s == "all") return check_names();
  auto names = split_list(s);
  for (const auto& n : names)
    if (!is_check_name(n)) throw CLI::ValidationError("--check", "unknown check '" + n + "'");
  return names;
}

std::uint64_t parse_bytes(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  std::uint64_t mult = 1;
  const std::string suffix = s.substr(pos);
  if (suffix == "K" || suffix == "KiB") mult = std::uint64_t{1} << 10;
  else if (suffix == "M" || suffix == "MiB") mult = std::uint64_t{1} << 20;
  else if (suffix == "G" || suffix == "GiB") mult = std::uint64_t{1} << 30;
  else if (!suffix.empty()) throw std::invalid_argument("bad memory size '" + s + "'");
  if (v <= 0) throw std::invalid_argument("memory budget must be positive");
  return static_cast<std::uint64_t>(v * static_cast<double>(mult));
}

struct Options {
  std::uint64_t seed = 0;
  std::uint64_t primes_seed = 0;
  std::size_t primes = 3;
  std::size_t samples = 12;
  std::size_t batch_size = 8;
  std::string budget_mem = "4G";
  long budget_time = 1800;
  std::string out;
  std::string format = "table";
  bool no_timestamps = false;
  std::string cache_dir;
};

CheckConfig make_config(const Options& o) {
  CheckConfig c;
  c.seed = o.seed;
  c.primes_seed = o.primes_seed;
  c.prime_count = o.primes;
  c.sample_batches = o.samples;
  c.batch_size = o.batch_size;
  c.budget.memory_bytes = parse_bytes(o.budget_mem);
  if (o.budget_time <= 0) throw std::invalid_argument("time budget must be positive");
  c.budget.time = std::chrono::seconds(o.budget_time);
  c.timestamps = !o.no_timestamps;
  c.cache_dir = o.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(o.cache_dir);
  return c;
}

int emit(const std::vector<Certificate>& certs, const Options& o) {
  const std::string table = summary_table(certs);
  if (o.format == "json") {
    const std::string text = to_json(certs).dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << text;
      std::cerr << table;
    } else {
      std::ofstream f(o.out);
      if (!f) throw std::runtime_error("cannot write " + o.out);
      f << text;
      std::cout << table;
    }
  } else {
    std::cout << table;
    if (!o.out.empty()) {
      std::ofstream f(o.out);
      if (!f) throw std::runtime_error("cannot write " + o.out);
      f << table;
    }
  }
  for (const auto& c : certs)
    if (c.outcome == Outcome::report_only)
      std::cerr << "warning: " << c.type.name() << " " << c.check_name << ": " << c.note << "\n";
  return exit_status(summarize(certs));
}

int cmd_build(const std::string& label, const Options& o) {
  const SimpleType t = parse_type(label);
  const Cache cache(o.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(o.cache_dir));
  bool loaded = false;
  const LieAlgebra L = cache.load_or_build(t, &loaded);
  const ContactGrading cg = contact_grading(L);
  std::cout << t.name() << ": dim " << L.dim() << ", rank " << L.rank() << ", roots " << L.root_system().size()
            << (loaded ? " (cached)" : " (built)") << "\n";
  std::cout << "grading dims (g2, g1, g0, g-1, g-2): " << cg.dim(2) << ", " << cg.dim(1) << ", " << cg.dim(0)
            << ", " << cg.dim(-1) << ", " << cg.dim(-2) << "\n";
  std::cout << "cache entry: " << cache.structure_path(t).string() << "\n";
  return 0;
}

int cmd_inspect(const std::string& entry, const Options& o) {
  std::filesystem::path path(entry);
  if (!std::filesystem::exists(path)) {
    const Cache cache(o.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(o.cache_dir));
    path = cache.structure_path(parse_type(entry));
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cache entry " + path.string());
  std::string first;
  std::getline(in, first);
  in.seekg(0);
  std::cout << "entry: " << path.string() << "\n";
  if (first.rfind("liecert-structure", 0) == 0) {
    std::string hash;
    const LieAlgebra L = read_structure(in, &hash);
    std::size_t nnz = 0;
    for (const auto& v : L.structure_table()) nnz += v.size();
    std::cout << "kind: structure table\ntype: " << L.root_system().name() << "\ndim: " << L.dim()
              << "\nnonzero structure entries: " << nnz << "\nhash: " << hash
              << (hash == engine_version_hash() ? " (current engine)" : " (stale)") << "\n";
  } else if (first.rfind("liecert-matrix", 0) == 0) {
    MatrixHeader h;
    const SparseMat m = read_matrix(in, &h);
    std::cout << "kind: matrix\nname: " << h.name << "\ntype: " << h.type.name() << "\nshape: " << m.rows() << " x "
              << m.cols() << "\nnnz: " << m.nnz() << "\nhash: " << h.hash
              << (h.hash == engine_version_hash() ? " (current engine)" : " (stale)") << "\n";
  } else {
    throw std::runtime_error("not a liecert cache entry: " + path.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for contact-grading, orbit and curvature statements on simple Lie algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--primes", o.primes, "number of primes for modular certificates")->check(CLI::PositiveNumber);
    sub->add_option("--primes-seed", o.primes_seed, "seed for prime selection");
    sub->add_option("--samples", o.samples, "maximum sample batches")->check(CLI::PositiveNumber);
    sub->add_option("--batch-size", o.batch_size, "samples per batch")->check(CLI::PositiveNumber);
    sub->add_option("--budget-mem", o.budget_mem, "memory budget, e.g. 4G or 512M");
    sub->add_option("--budget-time", o.budget_time, "time budget per check in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "write output to a file");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--no-timestamps", o.no_timestamps, "omit wall-clock fields");
    sub->add_option("--cache-dir", o.cache_dir, "cache directory (default: $LIECERT_CACHE_DIR)");
  };

  std::string type_label;
  std::string check = "all";
  std::string types;
  std::string entry;

  auto* build = app.add_subcommand("build", "construct and cache an algebra");
  build->add_option("type", type_label, "type and rank, e.g. G2")->required();
  build->add_option("--cache-dir", o.cache_dir, "cache directory");

  auto* verify = app.add_subcommand("verify", "run checks on one algebra");
  verify->add_option("type", type_label, "type and rank, e.g. G2")->required();
  verify->add_option("--check", check, "comma-separated check names or 'all'");
  add_common(verify);

  auto* suite = app.add_subcommand("suite", "run checks over several algebras");
  suite->add_option("--types", types, "comma-separated types, e.g. A2,G2,B3")->required();
  suite->add_option("--checks", check, "comma-separated check names or 'all'");
  add_common(suite);

  auto* inspect = app.add_subcommand("inspect", "describe a cache entry (path or type label)");
  inspect->add_option("entry", entry)->required();
  inspect->add_option("--cache-dir", o.cache_dir, "cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*build) return cmd_build(type_label, o);
    if (*inspect) return cmd_inspect(entry, o);
    std::vector<SimpleType> ts;
    std::vector<std::string> checks;
    try {
      checks = expand_checks(check);
      if (*verify) {
        ts.push_back(parse_type(type_label));
      } else {
        for (const auto& t : split_list(types)) ts.push_back(parse_type(t));
      }
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n" << app.help();
      return kUsage;
    }
    CheckConfig config;
    try {
      config = make_config(o);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
    CertifySession session(config);
    return emit(session.run_suite(ts, checks), o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
