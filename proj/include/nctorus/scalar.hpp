#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "nctorus/rational.hpp"

// Commutative coefficient ring shared by all symbolic stages: exact rational
// combinations of monomials in the fixed variable set
//
//     pi, tau1, tau2, xi1, xi2, r, u
//
// tau2 is Laurent (the 2*pi/tau2 prefactor and the polar substitution are the
// only sources of negative powers); every other exponent is >= 0.  |tau|^2 is
// never a variable: it enters pre-expanded as tau1^2 + tau2^2 so that the
// identity |tau|^2 - tau1^2 = tau2^2 holds on the nose.

namespace nct {

enum class Var : int { pi = 0, tau1, tau2, xi1, xi2, r, u };

constexpr int kNumVars = 7;

const char* var_name(Var v);
std::optional<Var> var_from_name(const std::string& name);

struct ScalarMono {
    // Exponents in fixed variable order; index by static_cast<int>(Var).
    std::array<int, kNumVars> e{};

    int  exp(Var v) const { return e[static_cast<int>(v)]; }
    void set(Var v, int p) { e[static_cast<int>(v)] = p; }

    int total_degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    int xi_degree() const { return exp(Var::xi1) + exp(Var::xi2); }

    bool operator==(const ScalarMono& o) const { return e == o.e; }

    ScalarMono operator*(const ScalarMono& o) const {
        ScalarMono m;
        for (int i = 0; i < kNumVars; ++i) m.e[i] = e[i] + o.e[i];
        return m;
    }
};

// Term order: graded by total degree, ties broken by descending exponent
// tuple.  Map iteration in this order is also the canonical print order
// (tau1^2 before tau2^2, low-degree groups first).
struct MonoLess {
    bool operator()(const ScalarMono& a, const ScalarMono& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.e > b.e;
    }
};

// Result of evaluating a ScalarPoly at a rational point: an exact rational
// multiple of powers of pi (pi is never assigned a rational value).
struct PiValue {
    std::map<int, Rational> by_pi_power;

    Rational rational_part() const;  // throws if any pi power present
    double   to_double() const;
    bool     is_zero() const { return by_pi_power.empty(); }
};

class ScalarPoly {
public:
    using TermMap = std::map<ScalarMono, Rational, MonoLess>;

    ScalarPoly() = default;
    explicit ScalarPoly(const Rational& c);
    ScalarPoly(const Rational& c, const ScalarMono& m);

    static ScalarPoly variable(Var v, int exp = 1);
    static ScalarPoly one() { return ScalarPoly(Rational(1)); }

    // |tau|^2 expanded at entry: tau1^2 + tau2^2.
    static ScalarPoly tau_abs_sq();
    // s(xi) = xi1^2 + 2 tau1 xi1 xi2 + (tau1^2+tau2^2) xi2^2, the scalar shape
    // of the leading symbol; the polar coordinates are designed so s -> r^2.
    static ScalarPoly leading_shape();

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational coeff(const ScalarMono& m) const;

    ScalarPoly operator+(const ScalarPoly& o) const;
    ScalarPoly operator-(const ScalarPoly& o) const;
    ScalarPoly operator*(const ScalarPoly& o) const;
    ScalarPoly operator-() const;
    ScalarPoly& operator+=(const ScalarPoly& o);

    ScalarPoly scaled(const Rational& c) const;
    bool operator==(const ScalarPoly& o) const { return terms_ == o.terms_; }

    // d/d(v) for v in {xi1, xi2, r}; u, tau never differentiated.
    ScalarPoly derivative(Var v) const;

    // Partial substitution of rational values for a subset of variables.
    ScalarPoly substituted(const std::map<Var, Rational>& point) const;

    // Full evaluation; every variable present in the poly except pi must be
    // bound.  Negative tau2 exponents require tau2 != 0.
    PiValue eval(const std::map<Var, Rational>& point) const;

    // Restriction to the terms with the given (xi1, xi2) exponents, with
    // those exponents removed (used by golden spot checks).
    ScalarPoly xi_slice(int e1, int e2) const;

    void add_term(const ScalarMono& m, const Rational& c);

private:
    TermMap terms_;
};

ScalarPoly operator*(const Rational& c, const ScalarPoly& p);

}  // namespace nct
