#include "liecert/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>

namespace liecert {

bool is_valid_type(char type, int rank) {
  switch (type) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

SimpleType parse_type(std::string_view label) {
  if (label.size() < 2) throw std::invalid_argument("type label too short: '" + std::string(label) + "'");
  SimpleType t;
  t.type = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  auto digits = label.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw std::invalid_argument("malformed type label: '" + std::string(label) + "'");
  if (!is_valid_type(t.type, t.rank))
    throw std::invalid_argument("no simple Lie algebra of type " + t.name());
  return t;
}

namespace {

std::vector<std::vector<int>> symmetric_form(char type, int l) {
  std::vector<std::vector<int>> s(l, std::vector<int>(l, 0));
  auto link = [&](int i, int j, int v) {  // 1-based
    s[i - 1][j - 1] = v;
    s[j - 1][i - 1] = v;
  };
  auto diag = [&](int i, int v) { s[i - 1][i - 1] = v; };

  switch (type) {
    case 'A':
    case 'D':
    case 'E':
      for (int i = 1; i <= l; ++i) diag(i, 2);
      if (type == 'A') {
        for (int i = 1; i < l; ++i) link(i, i + 1, -1);
      } else if (type == 'D') {
        for (int i = 1; i < l - 1; ++i) link(i, i + 1, -1);
        link(l - 2, l, -1);
      } else {
        link(1, 3, -1);
        link(2, 4, -1);
        for (int i = 3; i < l; ++i) link(i, i + 1, -1);
      }
      break;
    case 'B':
      for (int i = 1; i < l; ++i) diag(i, 4);
      diag(l, 2);
      for (int i = 1; i < l; ++i) link(i, i + 1, -2);
      break;
    case 'C':
      for (int i = 1; i < l; ++i) diag(i, 2);
      diag(l, 4);
      for (int i = 1; i < l - 1; ++i) link(i, i + 1, -1);
      link(l - 1, l, -2);
      break;
    case 'F':
      diag(1, 4);
      diag(2, 4);
      diag(3, 2);
      diag(4, 2);
      link(1, 2, -2);
      link(2, 3, -2);
      link(3, 4, -1);
      break;
    case 'G':
      diag(1, 2);
      diag(2, 6);
      link(1, 2, -3);
      break;
    default:
      break;
  }
  return s;
}

bool lex_less(const RootVec& a, const RootVec& b, int ha, int hb) {
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace

int RootSystem::inner(const RootVec& a, const RootVec& b) const {
  int acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) acc += a[i] * form_[i][j] * b[j];
  }
  return acc;
}

int RootSystem::height(const RootVec& a) const {
  int h = 0;
  for (int c : a) h += c;
  return h;
}

std::optional<std::size_t> RootSystem::index_of(const RootVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::simple_root_index(int i) const {
  RootVec v(rank_, 0);
  v.at(i) = 1;
  return *index_of(v);
}

std::size_t RootSystem::negative_index(std::size_t root) const {
  RootVec v = roots_.at(root);
  for (int& c : v) c = -c;
  return *index_of(v);
}

RootSystem build_root_system(char type, int rank) {
  if (!is_valid_type(type, rank))
    throw std::invalid_argument("no simple Lie algebra of type " + SimpleType{type, rank}.name());
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.form_ = symmetric_form(type, rank);
  rs.length_squares_.resize(rank);
  rs.cartan_.assign(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i) {
    rs.length_squares_[i] = rs.form_[i][i];
    for (int j = 0; j < rank; ++j) rs.cartan_[i][j] = 2 * rs.form_[i][j] / rs.form_[j][j];
  }

  // Positive roots by alpha_i-strings: with q the largest k such that
  // alpha - k alpha_i is a root, alpha + alpha_i is a root iff q - <alpha, alpha_i> > 0.
  std::set<RootVec> positive;
  std::vector<RootVec> layer;
  for (int i = 0; i < rank; ++i) {
    RootVec v(rank, 0);
    v[i] = 1;
    layer.push_back(v);
    positive.insert(v);
  }
  while (!layer.empty()) {
    std::set<RootVec> next;
    for (const auto& a : layer) {
      for (int i = 0; i < rank; ++i) {
        int q = 0;
        RootVec down = a;
        for (;;) {
          down[i] -= 1;
          if (!positive.contains(down)) break;
          ++q;
        }
        int two_inner = 0;
        for (int j = 0; j < rank; ++j) two_inner += 2 * a[j] * rs.form_[j][i];
        const int p = q - two_inner / rs.form_[i][i];
        if (p > 0) {
          RootVec up = a;
          up[i] += 1;
          if (!positive.contains(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    positive.insert(next.begin(), next.end());
  }

  for (const auto& a : positive) {
    RootVec neg = a;
    for (int& c : neg) c = -c;
    rs.roots_.push_back(a);
    rs.roots_.push_back(neg);
  }
  std::sort(rs.roots_.begin(), rs.roots_.end(), [&](const RootVec& a, const RootVec& b) {
    return lex_less(a, b, rs.height(a), rs.height(b));
  });
  for (std::size_t k = 0; k < rs.roots_.size(); ++k) rs.index_[rs.roots_[k]] = k;
  return rs;
}

int pairing(const RootSystem& rs, const RootVec& a, const RootVec& b) {
  if (a.size() != static_cast<std::size_t>(rs.rank()) || b.size() != a.size())
    throw std::invalid_argument("pairing: vector length does not match rank");
  const int bb = rs.inner(b, b);
  if (bb == 0) throw std::invalid_argument("pairing: second argument must be nonzero");
  const int num = 2 * rs.inner(a, b);
  if (num % bb != 0) throw std::invalid_argument("pairing: value is not an integer");
  return num / bb;
}

std::map<int, std::vector<std::size_t>> level_partition(const RootSystem& rs) {
  std::map<int, std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < rs.size(); ++k) out[pairing(rs, rs.roots()[k], rs.highest_root())].push_back(k);
  return out;
}

}  // namespace liecert
