#pragma once

#include <array>
#include <string>
#include <vector>

#include "nctorus/reduce.hpp"

// Spectral-function algebra on the modular operator Delta.  A SpectralFn is a
// finite combination of the basis elements u^{q/2} and u^{q/2} L_m(u),
// m = 1..3, where L_m is the modified logarithm
//
//   L_m(u) = (-1)^m (u-1)^{-(m+1)} ( log u - sum_{j=1}^m (-1)^{j+1} (u-1)^j / j )
//          = sum_{n>=0} (-1)^n (u-1)^n / (n+m+1)        (|u-1| < 1).
//
// The whole zeta(0)+1 value is the bilinear expression
//   (2 pi / tau2) sum_{ij} phi( F_ij(Delta)(delta_i k) . delta_j k ),
// phi(x) = tau0(x k^{-2}), and the engine proves F_ij = (1, |tau|^2, tau1,
// tau1) * f for a single tau-free f, converts f to the entire function
// h(log u), forms K(x) = 4 x^{-2} (e^{x/2}-1)^2 h(x), and certifies that K is
// odd, which kills the bilinear form and gives zeta(0) = -1.

namespace nct {

// Basis key: u^{q2/2} * (m == 0 ? 1 : L_m(u)).
struct SpectralKey {
    int q2 = 0;
    int m = 0;
    bool operator<(const SpectralKey& o) const {
        return std::tie(m, q2) < std::tie(o.m, o.q2);
    }
    bool operator==(const SpectralKey& o) const { return q2 == o.q2 && m == o.m; }
};

class SpectralFn {
public:
    using TermMap = std::map<SpectralKey, ScalarPoly>;

    SpectralFn() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const SpectralKey& k, const ScalarPoly& c);

    SpectralFn operator+(const SpectralFn& o) const;
    SpectralFn operator-(const SpectralFn& o) const;
    SpectralFn scaled(const ScalarPoly& c) const;
    SpectralFn scaled(const Rational& c) const;
    bool operator==(const SpectralFn& o) const { return terms_ == o.terms_; }

    bool tau_free() const;

    // Numeric evaluation at u > 0; near u = 1 the removable singularity of
    // L_m is evaluated by the series above (degree >= 12, seam |u-1| < 0.1).
    double eval(double u) const;

private:
    TermMap terms_;
};

double eval_Lm(int m, double u);

// The function of Lemma-5.1 shape that the pipeline must reproduce:
//   f(u) = 1/6 u^{-1/2} - 1/3 + L1 - 2(1+u^{1/2}) L2 + (1+u^{1/2})^2 L3.
SpectralFn reference_f();

// The four-slot bilinear expression.  Slots are indexed 1..2; the 2*pi/tau2
// prefactor is carried once, and the overall sign flip from evaluating the
// resolvent at -1 is already folded in.
struct ModularExpr {
    std::array<std::array<SpectralFn, 2>, 2> slot;  // [i-1][j-1]

    SpectralFn& at(int i, int j) { return slot[i - 1][j - 1]; }
    const SpectralFn& at(int i, int j) const { return slot[i - 1][j - 1]; }
};

// Scalar (non-D_m) part of the assembled expression, i.e. the closed AllLeft
// family; must consist of k^-1 dk(a,b) and k^-2 dk dk words only.
ModularExpr assemble_premain(const NCPoly& all_left_closed, const ModularTermList& dterms);

struct SlotCertificate {
    bool pass = false;
    std::string detail;
};

struct RegroupResult {
    SpectralFn f;
    std::array<std::array<SlotCertificate, 2>, 2> cert;
    bool f_matches_reference = false;
    bool all_pass = false;
};

// Verifies slots = (f, |tau|^2 f, tau1 f, tau1 f) for a single tau-free f and
// f == reference_f().
RegroupResult regroup_f(const ModularExpr& m);

// ---------------------------------------------------------------------------
// Exact exponential-rational arithmetic in y = e^{x/2} and x
// ---------------------------------------------------------------------------

// Laurent polynomials in y with polynomial x dependence.
class YXPoly {
public:
    using TermMap = std::map<std::pair<int, int>, Rational>;  // (ey, ex) -> c

    YXPoly() = default;
    explicit YXPoly(const Rational& c);
    static YXPoly term(const Rational& c, int ey, int ex);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    YXPoly operator+(const YXPoly& o) const;
    YXPoly operator-(const YXPoly& o) const;
    YXPoly operator*(const YXPoly& o) const;
    YXPoly operator-() const;
    bool operator==(const YXPoly& o) const { return terms_ == o.terms_; }

    YXPoly pow(int n) const;
    // (y, x) -> (1/y, -x), the parity involution.
    YXPoly negated_argument() const;

    // Exact truncated Taylor expansion at x = 0 using y = e^{x/2}.
    std::vector<Rational> series(int order) const;

    double eval(double x) const;

    void add(int ey, int ex, const Rational& c);

private:
    TermMap terms_;
};

struct ExpRational {
    YXPoly num, den;

    bool equals(const ExpRational& o) const;  // cross-multiplied exact identity
    ExpRational operator+(const ExpRational& o) const;
    ExpRational operator*(const ExpRational& o) const;
    ExpRational negated_argument() const;
    double eval(double x) const;
    void reduce();  // canonical form: monomial content out, den normalized, gcd in y
};

// Closed form L_m(y^2, x) as an element of the (y, x) ring.
ExpRational Lm_exp_form(int m);

// Substitutes u = y^2, log u = x into a tau-free SpectralFn.
ExpRational to_exp_form(const SpectralFn& f);

// h(x): the entire function with f(u) = h(log u), in its printed closed form.
ExpRational reference_h();

// K = 4 x^{-2} (y-1)^2 h.
ExpRational compute_K(const ExpRational& h);

// K in hyperbolic-sine form: -(x - sh(x/2) - sh(x) + sh(3x/2)/3)/(x^2 sh(x/2)^2).
ExpRational reference_K_sh_form();

struct KCertificate {
    bool h_match = false;       // to_exp_form(f) == h
    bool sh_match = false;      // K == sh form
    bool odd = false;           // K(x) + K(-x) == 0
    bool zero_at_origin = false;  // series constant term vanishes
    std::vector<Rational> series;  // K Taylor coefficients up to x^5
    std::string detail;
};

KCertificate certify_K(const SpectralFn& f);

struct Conclusion {
    bool valid = false;
    std::string statement;  // the theorem, stated once
    std::string reasoning;
};

// Final step: with the regroup and K certificates in hand, antisymmetry of
// phi(f(Delta)(delta_i k) delta_j k) forces the diagonal slots to vanish and
// the off-diagonal tau1 slots to cancel, so zeta(0) = -1 independent of k,
// tau1, tau2.
Conclusion conclude(const RegroupResult& regroup, const KCertificate& kc);

}  // namespace nct
