#pragma once

#include <optional>
#include <vector>

#include "nctorus/symbol.hpp"

// Reduction of tau0(b2) to modular-operator expressions: cyclic trace
// rearrangement, the polar substitution
//     xi1 = r cos(t) - r (tau1/tau2) sin(t),   xi2 = (r/tau2) sin(t),
// angular integration (the overall 2*pi/tau2 is factored out and recorded
// once), and the three radial families:
//   AllLeft        b0^m k^p (tail)            -> Beta-function closed form
//   SingleMiddle   b0^A k^a dk_i b0 k^b dk_j  -> D_m functional calculus
//   SquaredMiddle  b0^M k^p dk_i b0^2 k^q dk_j -> integration by parts via
//                                                dr(b0) = -2 r k^2 b0^2
// After the D_m step each surviving term is a spectral-function entry at a
// slot (i,j) of the bilinear form phi(F(Delta)(delta_i k) . delta_j k).

namespace nct {

enum class TermClass { AllLeft, SingleMiddle, SquaredMiddle };

struct RadialTerm {
    ScalarPoly coeff;  // polynomial in tau1, tau2 (Laurent), r
    Word word;         // r-stage, b0 = (r^2 k^2 + 1)^{-1}
    TermClass cls;
};

// Trig monomial expansion keyed by (cos exponent, sin exponent).
struct TrigPoly {
    std::map<Word, std::map<std::pair<int, int>, ScalarPoly>> entries;
};

// One term of the modular expression: coeff * u^{q2/2} L_m(u) applied to
// delta_i(k), paired with delta_j(k).  m = 0 means the plain power u^{q2/2}.
struct ModularTerm {
    int i, j;          // slot indices in {1, 2}
    int m;             // 0..3
    int q2;            // twist Delta^{q2/2} on the left factor
    ScalarPoly coeff;  // tau1/tau2 polynomial
};

using ModularTermList = std::vector<ModularTerm>;

// Key-merged view for exact comparisons.
std::map<std::tuple<int, int, int, int>, ScalarPoly> merged(const ModularTermList& terms);

TrigPoly polar_substitute(const NCPoly& x);
NCPoly angular_integrate(const TrigPoly& t);

TermClass classify(const Word& w);

// Splits a post-angular expression by class; every word must land in exactly
// one class.
struct ClassifiedTerms {
    NCPoly all_left, single_middle, squared_middle;
};
ClassifiedTerms classify_terms(const NCPoly& radial);

// Closed form of int_0^infty of an AllLeft family via u = r^2 and the Beta
// function; result lives in k powers and dk atoms only.
NCPoly integrate_all_left(const NCPoly& all_left);

// Rewrites b0^2-in-the-middle terms as b0-in-the-middle terms under the
// integral sign (boundary terms vanish by the degree count: the integrand is
// O(r^-3) at infinity and O(r^5) at 0).
NCPoly ibp_rewrite(const NCPoly& squared_middle);

// Lemma template for one b0 in the middle: after cycling trailing k powers
// and absorbing the inner k^b as a Delta^{b/2} twist, a term
//   c r^{2m+1} b0^{m+1} k^a dk_i b0 k^b dk_j      (a + b = 2m)
// integrates to (c/2) k^{-2} D_m Delta^{b/2}(dk_i) dk_j.  Any violation of
// the exponent budget is a pipeline bug, never a silent guess.
ModularTerm apply_Dm(const ScalarPoly& coeff, const Word& w);

// The asymmetric single-middle term 8 tau1 r^5 b0^3 k^4 dk_1 b0 dk_2 is
// integrated by parts once more to restore i<->j symmetry; output is the
// four-term combination
//   2 tau1 k^-2 [ D1(dk1)dk2 + D2(dk1)dk2 - D1(dk2)dk1 + D2(dk2)dk1 ].
bool is_symmetric_split_target(const Word& w);
ModularTermList symmetric_split(const ScalarPoly& coeff, const Word& w);

struct ReduceResult {
    NCPoly cyclic;          // trace-normalized b2 (xi stage)
    NCPoly radial;          // post-angular list, 2*pi/tau2 factored out
    ClassifiedTerms split;
    NCPoly all_left_closed; // Beta-integrated AllLeft family
    NCPoly single_all;      // direct singles + IBP output, the expression T
    ModularTermList dterms; // D_m terms, symmetrized route
    ModularTermList dterms_unsym;  // alternative route for the split term
};

ReduceResult reduce_b2(const NCPoly& b2);

// Prefactor of the whole reduction, recorded once: 2*pi/tau2.
ScalarPoly reduction_prefactor();

}  // namespace nct
