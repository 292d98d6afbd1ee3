#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace liecert {

using Integer = mpz_class;
using Rational = mpq_class;

/// Always "num/den", including integers ("3/1"), so that the text form is
/// a fixed grammar for caches and certificates.
std::string to_string(const Rational& q);

/// Accepts "num/den" or a bare integer; the result is canonicalized.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace liecert
