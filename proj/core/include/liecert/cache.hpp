#pragma once

// Text cache for structure tables and assembled matrices. Both use a header
// line followed by one "i j k num den" (structure) or "row col num den"
// (matrix) triple per line; reading back is bit-exact.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "liecert/exactla.hpp"
#include "liecert/liealg.hpp"

namespace liecert {

std::string engine_version();
/// 16 hex digits of FNV-1a over engine_version(); keys every cache entry.
std::string engine_version_hash();
std::string fnv1a_hex(std::string_view data);

/// Only pairs i < j are written; the reader restores antisymmetry.
void write_structure(std::ostream& out, const LieAlgebra& L);
/// Throws std::runtime_error on malformed input or a header that does not
/// match the recorded type.
LieAlgebra read_structure(std::istream& in, std::string* hash = nullptr);

struct MatrixHeader {
  std::string name;
  SimpleType type;
  std::string hash;
};

void write_matrix(std::ostream& out, const SparseMat& m, const MatrixHeader& header);
SparseMat read_matrix(std::istream& in, MatrixHeader* header = nullptr);

class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// LIECERT_CACHE_DIR, else $XDG_CACHE_HOME/liecert, else ~/.cache/liecert.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path structure_path(SimpleType t) const;
  std::filesystem::path matrix_path(SimpleType t, const std::string& name) const;

  /// Reads the cached table when its hash matches the engine, otherwise builds
  /// and stores it. `loaded` reports which happened.
  LieAlgebra load_or_build(SimpleType t, bool* loaded = nullptr) const;

  std::optional<SparseMat> load_matrix(SimpleType t, const std::string& name) const;
  void store_matrix(SimpleType t, const std::string& name, const SparseMat& m) const;

 private:
  void write_atomically(const std::filesystem::path& target, const std::string& contents) const;

  std::filesystem::path dir_;
};

}  // namespace liecert
