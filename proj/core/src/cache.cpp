#include "liecert/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifndef LIECERT_VERSION
#define LIECERT_VERSION "dev"
#endif

namespace liecert {

namespace {

constexpr const char* kStructureMagic = "liecert-structure";
constexpr const char* kMatrixMagic = "liecert-matrix";
constexpr int kFormatVersion = 1;

void expect(std::istream& in, const std::string& word) {
  std::string got;
  if (!(in >> got) || got != word) throw std::runtime_error("cache: expected '" + word + "', got '" + got + "'");
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v;
  if (!(in >> v)) throw std::runtime_error(std::string("cache: could not read ") + what);
  return v;
}

Rational read_fraction(std::istream& in) {
  std::string num = read_value<std::string>(in, "numerator");
  std::string den = read_value<std::string>(in, "denominator");
  Rational q = parse_rational(num + "/" + den);
  if (to_string(q) != num + "/" + den) throw std::runtime_error("cache: fraction not in lowest terms");
  return q;
}

}  // namespace

std::string engine_version() { return std::string("liecert ") + LIECERT_VERSION + " chevalley-extraspecial"; }

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[k] = digits[h & 0xf];
  return out;
}

std::string engine_version_hash() { return fnv1a_hex(engine_version()); }

void write_structure(std::ostream& out, const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) count += L.structure(i, j).size();
  const auto& rs = L.root_system();
  out << kStructureMagic << ' ' << kFormatVersion << '\n';
  out << "type " << rs.type_label() << " rank " << rs.rank() << " dim " << n << " hash " << engine_version_hash()
      << '\n';
  out << "entries " << count << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& e : L.structure(i, j)) {
        out << i << ' ' << j << ' ' << e.index << ' ' << e.value.get_num().get_str() << ' '
            << e.value.get_den().get_str() << '\n';
      }
    }
  }
}

LieAlgebra read_structure(std::istream& in, std::string* hash) {
  expect(in, kStructureMagic);
  if (read_value<int>(in, "format version") != kFormatVersion) throw std::runtime_error("cache: unknown format version");
  expect(in, "type");
  const char type = read_value<char>(in, "type");
  expect(in, "rank");
  const int rank = read_value<int>(in, "rank");
  if (!is_valid_type(type, rank)) throw std::runtime_error("cache: invalid type in header");
  expect(in, "dim");
  const std::size_t n = read_value<std::size_t>(in, "dim");
  expect(in, "hash");
  std::string h = read_value<std::string>(in, "hash");
  if (hash) *hash = h;
  expect(in, "entries");
  const std::size_t count = read_value<std::size_t>(in, "entry count");

  RootSystem rs = build_root_system(type, rank);
  if (n != static_cast<std::size_t>(rank) + rs.size()) throw std::runtime_error("cache: dimension does not match type");
  std::vector<SparseVec> table(n * n);
  for (std::size_t c = 0; c < count; ++c) {
    const auto i = read_value<std::size_t>(in, "i");
    const auto j = read_value<std::size_t>(in, "j");
    const auto k = read_value<std::size_t>(in, "k");
    Rational v = read_fraction(in);
    if (i >= j || j >= n || k >= n) throw std::runtime_error("cache: structure index out of range");
    auto& slot = table[i * n + j];
    if (!slot.empty() && slot.back().index >= k) throw std::runtime_error("cache: structure entries out of order");
    slot.push_back({k, v});
    table[j * n + i].push_back({k, -v});
  }
  std::string trailing;
  if (in >> trailing) throw std::runtime_error("cache: trailing data after structure table");
  return LieAlgebra::from_structure(rs, std::move(table));
}

void write_matrix(std::ostream& out, const SparseMat& m, const MatrixHeader& header) {
  out << kMatrixMagic << ' ' << kFormatVersion << '\n';
  out << "name " << header.name << " type " << header.type.type << " rank " << header.type.rank << " hash "
      << header.hash << '\n';
  out << "rows " << m.rows() << " cols " << m.cols() << " nnz " << m.nnz() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) {
      out << r << ' ' << e.index << ' ' << e.value.get_num().get_str() << ' ' << e.value.get_den().get_str() << '\n';
    }
  }
}

SparseMat read_matrix(std::istream& in, MatrixHeader* header) {
  expect(in, kMatrixMagic);
  if (read_value<int>(in, "format version") != kFormatVersion) throw std::runtime_error("cache: unknown format version");
  MatrixHeader h;
  expect(in, "name");
  h.name = read_value<std::string>(in, "name");
  expect(in, "type");
  h.type.type = read_value<char>(in, "type");
  expect(in, "rank");
  h.type.rank = read_value<int>(in, "rank");
  expect(in, "hash");
  h.hash = read_value<std::string>(in, "hash");
  expect(in, "rows");
  const auto rows = read_value<std::size_t>(in, "rows");
  expect(in, "cols");
  const auto cols = read_value<std::size_t>(in, "cols");
  expect(in, "nnz");
  const auto nnz = read_value<std::size_t>(in, "nnz");
  std::vector<Triplet> t;
  t.reserve(nnz);
  for (std::size_t c = 0; c < nnz; ++c) {
    const auto r = read_value<std::size_t>(in, "row");
    const auto col = read_value<std::size_t>(in, "col");
    t.push_back({r, col, read_fraction(in)});
  }
  std::string trailing;
  if (in >> trailing) throw std::runtime_error("cache: trailing data after matrix");
  if (header) *header = h;
  return {rows, cols, std::move(t)};
}

std::filesystem::path Cache::default_dir() {
  if (const char* env = std::getenv("LIECERT_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "liecert";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "liecert";
  return ".liecert-cache";
}

std::filesystem::path Cache::structure_path(SimpleType t) const { return dir_ / (t.name() + ".structure.txt"); }

std::filesystem::path Cache::matrix_path(SimpleType t, const std::string& name) const {
  return dir_ / (t.name() + "." + name + ".matrix.txt");
}

void Cache::write_atomically(const std::filesystem::path& target, const std::string& contents) const {
  std::filesystem::create_directories(target.parent_path());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

LieAlgebra Cache::load_or_build(SimpleType t, bool* loaded) const {
  const auto path = structure_path(t);
  if (std::ifstream in(path, std::ios::binary); in) {
    try {
      std::string hash;
      LieAlgebra L = read_structure(in, &hash);
      if (hash == engine_version_hash() && L.root_system().name() == t.name()) {
        if (loaded) *loaded = true;
        return L;
      }
    } catch (const std::exception&) {
      // Corrupt or stale entries are rebuilt below.
    }
  }
  LieAlgebra L = LieAlgebra::chevalley(build_root_system(t));
  std::ostringstream out;
  write_structure(out, L);
  write_atomically(path, out.str());
  if (loaded) *loaded = false;
  return L;
}

std::optional<SparseMat> Cache::load_matrix(SimpleType t, const std::string& name) const {
  std::ifstream in(matrix_path(t, name), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    MatrixHeader h;
    SparseMat m = read_matrix(in, &h);
    if (h.hash != engine_version_hash() || h.name != name || !(h.type == t)) return std::nullopt;
    return m;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store_matrix(SimpleType t, const std::string& name, const SparseMat& m) const {
  std::ostringstream out;
  write_matrix(out, m, {name, t, engine_version_hash()});
  write_atomically(matrix_path(t, name), out.str());
}

}  // namespace liecert
