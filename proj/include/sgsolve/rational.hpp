#pragma once

#include <gmpxx.h>

#include <string>

namespace sgsolve {

// Exact rational arithmetic; qualitative answers must never see a float.
using Rational = mpq_class;

// Accepts "num/den" or a bare integer. Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

// Lowest terms, "num/den", or just "num" when the denominator is 1.
std::string rational_to_string(const Rational& r);

}  // namespace sgsolve
