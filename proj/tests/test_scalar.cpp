#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nctorus/io.hpp"
#include "nctorus/scalar.hpp"

using namespace nct;

namespace {

ScalarPoly v(Var x, int e = 1) { return ScalarPoly::variable(x, e); }

// Random sparse polynomial over the full variable set (tau2 Laurent).
ScalarPoly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expo(0, 3), coeff(-6, 6), lau(-2, 3);
    ScalarPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ScalarMono m;
        m.set(Var::tau1, expo(rng));
        m.set(Var::tau2, lau(rng));
        m.set(Var::xi1, expo(rng));
        m.set(Var::xi2, expo(rng));
        int c = coeff(rng);
        if (c != 0) p.add_term(m, Rational(c));
    }
    return p;
}

}  // namespace

TEST_CASE("addition expands |tau|^2 and cancels inverses") {
    CHECK(v(Var::tau1, 2) + v(Var::tau2, 2) == ScalarPoly::tau_abs_sq());

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        ScalarPoly x = random_poly(rng);
        CHECK((x + (-x)).is_zero());
    }

    // Coefficient grouping of the quadratic angular family.
    ScalarPoly lhs = Rational(6) * (v(Var::xi1, 2)) +
                     Rational(12) * (v(Var::tau1) * v(Var::xi1) * v(Var::xi2));
    ScalarPoly expect = parse_scalar_poly("6*xi1^2 + 12*tau1^1*xi1^1*xi2^1");
    CHECK(lhs == expect);
}

TEST_CASE("multiplication is exact") {
    ScalarPoly t4 = ScalarPoly::tau_abs_sq() * ScalarPoly::tau_abs_sq();
    CHECK(t4 == parse_scalar_poly("tau1^4 + 2*tau1^2*tau2^2 + tau2^4"));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        ScalarPoly x = random_poly(rng);
        CHECK(ScalarPoly::one() * x == x);
    }

    ScalarPoly prod = (Rational(2) * (v(Var::tau1) * v(Var::xi1) * v(Var::xi2))) * v(Var::xi1, 2);
    CHECK(prod == parse_scalar_poly("2*tau1^1*xi1^3*xi2^1"));
}

TEST_CASE("ring axioms on randomized triples") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        ScalarPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("evaluation") {
    // tau = i, i.e. tau1 = 0, tau2 = 1.
    PiValue one = ScalarPoly::tau_abs_sq().eval({{Var::tau1, 0}, {Var::tau2, 1}});
    CHECK(one.rational_part() == 1);

    CHECK(ScalarPoly().eval({}).is_zero());

    // 2 pi / tau2 at tau2 = 2 is exactly pi.
    ScalarPoly pref = Rational(2) * (v(Var::pi) * v(Var::tau2, -1));
    PiValue pi_val = pref.eval({{Var::tau2, 2}});
    CHECK(pi_val.by_pi_power.size() == 1);
    CHECK(pi_val.by_pi_power.at(1) == 1);
    CHECK(pi_val.to_double() == doctest::Approx(3.14159265358979).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(pref.eval({}), doctest::Contains("tau2"), calc_error);
    CHECK_THROWS_AS(pref.eval({{Var::tau2, 0}}), calc_error);
}

TEST_CASE("canonical serialization round-trips") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        ScalarPoly p = random_poly(rng);
        if (p.is_zero()) continue;
        std::string s = to_string(p);
        CHECK(to_string(parse_scalar_poly(s)) == s);
    }
    CHECK(to_string(parse_scalar_poly("6*tau1^1*xi1^2*xi2^1")) == "6*tau1^1*xi1^2*xi2^1");
}

TEST_CASE("derivatives and slices") {
    ScalarPoly s = ScalarPoly::leading_shape();
    CHECK(s.derivative(Var::xi1) ==
          parse_scalar_poly("2*xi1^1 + 2*tau1^1*xi2^1"));
    CHECK(s.derivative(Var::xi2) ==
          parse_scalar_poly("2*tau1^1*xi1^1 + 2*tau1^2*xi2^1 + 2*tau2^2*xi2^1"));
    CHECK(s.xi_slice(0, 2) == ScalarPoly::tau_abs_sq());
    CHECK(s.substituted({{Var::tau1, 0}, {Var::tau2, 1}}) ==
          parse_scalar_poly("xi1^2 + xi2^2"));
}
