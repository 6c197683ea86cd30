#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace orbimorse {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "a/b" in lowest terms, plain "a" when b == 1.
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b". Throws Error(ParseError) on anything else or b == 0.
Rational parse_rational(std::string_view text);

}  // namespace orbimorse
