#include "liecert/rational.hpp"

#include <stdexcept>

namespace liecert {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    if (digits.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) throw std::invalid_argument("malformed rational");
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9')
        throw std::invalid_argument("malformed rational: " + std::string(text));
    }
    std::string s(digits[0] == '+' ? digits.substr(1) : digits);
    return Integer(s, 10);
  };

  auto slash = text.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_int(text));
  } else {
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in rational");
    q = Rational(num, den);
    q.canonicalize();
  }
  return q;
}

}  // namespace liecert
