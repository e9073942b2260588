#pragma once

#include <map>
#include <vector>

#include "nctorus/scalar.hpp"

// Noncommutative word algebra over the coefficient ring: ordered products of
//
//   k^p            (Weyl factor powers, p != 0)
//   b0^m           (resolvent factor b0 = (a2+1)^{-1}, m >= 1)
//   dk(a,b;q)      Delta^q( delta1^a delta2^b (k) ),  a+b >= 1, q half-integer
//   logk(a,b;q)    Delta^q( delta1^a delta2^b (log k) )
//
// b0 is a function of k and scalars, so b0 <-> k commutation is a built-in
// rewrite; without it the all-b0-on-the-left classification of the radial
// stage cannot be detected.  Derivative multi-indices are unordered
// (delta1 delta2 = delta2 delta1) and stored as the exponent pair.
// Twists are written q = q2/2 and stay 0 until the radial integration stage.

namespace nct {

enum class AtomKind : int { B0 = 0, K = 1, DK = 2, LogK = 3 };

struct Atom {
    AtomKind kind;
    int p = 0;   // exponent for B0 (m >= 1) and K (p != 0)
    int a = 0, b = 0;  // derivative multi-index for DK / LogK
    int q2 = 0;        // modular twist in half-units: Delta^{q2/2}

    static Atom b0(int m = 1) { return Atom{AtomKind::B0, m, 0, 0, 0}; }
    static Atom k(int p = 1) { return Atom{AtomKind::K, p, 0, 0, 0}; }
    static Atom dk(int a, int b, int q2 = 0) { return Atom{AtomKind::DK, 0, a, b, q2}; }
    static Atom logk(int a, int b, int q2 = 0) { return Atom{AtomKind::LogK, 0, a, b, q2}; }

    bool operator==(const Atom& o) const {
        return kind == o.kind && p == o.p && a == o.a && b == o.b && q2 == o.q2;
    }
    bool operator<(const Atom& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (p != o.p) return p < o.p;
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return q2 < o.q2;
    }
};

struct Word {
    std::vector<Atom> atoms;

    Word() = default;
    explicit Word(std::vector<Atom> as) : atoms(std::move(as)) { normalize(); }

    bool empty() const { return atoms.empty(); }

    // Normal form: within each maximal block of B0/K atoms the exponents are
    // merged and B0 precedes K; zero K powers vanish.
    void normalize();

    // Canonical representative of the cyclic (trace) class: reduce to the
    // lexicographically least rotation of the unit decomposition.  Only valid
    // under a trace, which the caller asserts by calling this at all.
    Word cyclic_canonical() const;

    int b0_degree() const;  // total b0 exponent
    int dk_count() const;

    bool operator==(const Word& o) const { return atoms == o.atoms; }
    bool operator<(const Word& o) const;
};

// Derivation directions.  delta1/delta2 are the algebra derivations; dxi1,
// dxi2, dr differentiate the symbol variables (they also act on scalar
// coefficients).
enum class Dir { delta1, delta2, dxi1, dxi2, dr };

// Pipeline stage, which fixes what b0 means: (s(xi) k^2 + 1)^{-1} before the
// polar substitution, (r^2 k^2 + 1)^{-1} after.
enum class Stage { xi, r };

class NCPoly {
public:
    using TermMap = std::map<Word, ScalarPoly>;

    NCPoly() = default;
    explicit NCPoly(const Rational& c);
    NCPoly(const ScalarPoly& c, const Word& w);

    static NCPoly atom(const Atom& a, const ScalarPoly& c = ScalarPoly::one());
    static NCPoly one() { return NCPoly(Rational(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    ScalarPoly coeff(const Word& w) const;

    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly operator-() const;
    NCPoly& operator+=(const NCPoly& o);
    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }

    NCPoly scaled(const Rational& c) const;
    NCPoly scaled(const ScalarPoly& c) const;

    void add_term(const Word& w, const ScalarPoly& c);

private:
    TermMap terms_;
};

// Bilinear product; words concatenate and renormalize.
NCPoly word_mul(const NCPoly& x, const NCPoly& y);

// Leibniz extension of the derivation d at the given stage.  Atom rules:
//   delta_j(k)      = dk(e_j)
//   delta_j(k^-1)   = -k^-1 dk(e_j) k^-1        (inverse rule)
//   delta_j(dk)     = multi-index increment      (twist must be 0)
//   delta_j(b0)     = -s * b0 (dk_j k + k dk_j) b0,   s = s(xi) or r^2
//   dxi_i(b0)       = -(d s/d xi_i) k^2 b0^2
//   dr(b0)          = -2 r k^2 b0^2
// dxi/dr also differentiate the scalar coefficients.
NCPoly derive(const NCPoly& x, Dir d, Stage stage = Stage::xi);

// Adjoint: reverse each word and star the atoms; dk(a,b)^* = (-1)^{a+b} dk(a,b)
// since delta_j(x^*) = -delta_j(x)^* and k is selfadjoint.
NCPoly star(const NCPoly& x);

// Replace every word by its canonical cyclic rotation, merging coefficients.
// Trace context is the caller's responsibility.
NCPoly cyclic_normalize(const NCPoly& x);

// Partial scalar substitution applied to every coefficient.
NCPoly substituted(const NCPoly& x, const std::map<Var, Rational>& point);

}  // namespace nct
