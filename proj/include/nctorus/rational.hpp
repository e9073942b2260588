#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

// Exact arbitrary-precision rational arithmetic. The headline identity
// zeta(0) = -1 is exact, so every symbolic coefficient in the engine is a
// Rational; doubles appear only in the numerical oracle.

namespace nct {

using Rational = boost::multiprecision::cpp_rational;
using Integer  = boost::multiprecision::cpp_int;

struct calc_error : std::runtime_error {
    explicit calc_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Rational rat(long n) { return Rational(n); }

inline Rational rat(long n, long d) {
    if (d == 0) throw calc_error("rational with zero denominator");
    return Rational(n) / Rational(d);
}

inline Integer factorial(int n) {
    if (n < 0) throw calc_error("factorial of negative integer");
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// (n)!! with (-1)!! = 0!! = 1, used by the angular integrals.
inline Integer double_factorial(int n) {
    if (n < -1) throw calc_error("double factorial below -1");
    Integer f = 1;
    for (int i = n; i > 1; i -= 2) f *= i;
    return f;
}

// Euler Beta function B(p, q) = (p-1)!(q-1)!/(p+q-1)! at positive integer
// arguments; exact, this is all the radial closed forms need.
inline Rational beta_int(int p, int q) {
    if (p <= 0 || q <= 0) throw calc_error("beta_int needs positive integer arguments");
    return Rational(factorial(p - 1) * factorial(q - 1)) / Rational(factorial(p + q - 1));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

}  // namespace nct
