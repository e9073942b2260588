#pragma once

#include <string>

#include "nctorus/word.hpp"

// Canonical textual forms.  Scalar monomials print in the fixed variable
// order (pi, tau1, tau2, xi1, xi2, r, u) with explicit exponents, e.g.
// "6*tau1^1*xi1^2*xi2^1".  Words are whitespace-separated tokens
// "b0^m k^p dk(a,b;q) logk(a,b;q)" with q a half-integer.  NCPoly files carry
// one term per line as "<poly> | <word>"; serialize(parse(s)) == s on
// canonical input, and output is deterministic byte-for-byte.

namespace nct {

std::string to_string(const ScalarPoly& p);
std::string to_string(const Word& w);
std::string to_string(const NCPoly& p);  // multi-line, one term per line

ScalarPoly parse_scalar_poly(const std::string& text);
Word parse_word(const std::string& text);
NCPoly parse_ncpoly(const std::string& text);

// Display form grouping the tau-polynomial per remaining monomial, e.g.
// "xi1^2*k^2 + (tau1^2+tau2^2)*xi2^2*k^2 + 2*tau1*xi1*xi2*k^2".
std::string pretty(const NCPoly& p);

// FNV-1a of the canonical serialization; stage checksums in reports.
std::uint64_t content_hash(const std::string& s);

}  // namespace nct
