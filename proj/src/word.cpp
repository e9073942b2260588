#include "nctorus/word.hpp"

#include <algorithm>

namespace nct {

// ---------------------------------------------------------------------------
// Word normal form
// ---------------------------------------------------------------------------

void Word::normalize() {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    size_t i = 0;
    while (i < atoms.size()) {
        const Atom& at = atoms[i];
        if (at.kind == AtomKind::B0 || at.kind == AtomKind::K) {
            int mb0 = 0, pk = 0;
            while (i < atoms.size() &&
                   (atoms[i].kind == AtomKind::B0 || atoms[i].kind == AtomKind::K)) {
                if (atoms[i].kind == AtomKind::B0) mb0 += atoms[i].p;
                else pk += atoms[i].p;
                ++i;
            }
            if (mb0 < 0) throw calc_error("negative b0 power in word");
            if (mb0 > 0) out.push_back(Atom::b0(mb0));
            if (pk != 0) out.push_back(Atom::k(pk));
        } else {
            out.push_back(at);
            ++i;
        }
    }
    atoms = std::move(out);
}

int Word::b0_degree() const {
    int d = 0;
    for (const Atom& a : atoms)
        if (a.kind == AtomKind::B0) d += a.p;
    return d;
}

int Word::dk_count() const {
    int n = 0;
    for (const Atom& a : atoms)
        if (a.kind == AtomKind::DK) ++n;
    return n;
}

bool Word::operator<(const Word& o) const {
    return std::lexicographical_compare(atoms.begin(), atoms.end(), o.atoms.begin(),
                                        o.atoms.end());
}

// ---------------------------------------------------------------------------
// Canonical cyclic representative
// ---------------------------------------------------------------------------

// Explode powers into unit atoms so rotations can cut through k^p and b0^m.
static std::vector<Atom> explode(const Word& w) {
    std::vector<Atom> units;
    for (const Atom& a : w.atoms) {
        switch (a.kind) {
            case AtomKind::B0:
                for (int i = 0; i < a.p; ++i) units.push_back(Atom::b0(1));
                break;
            case AtomKind::K: {
                int n = a.p > 0 ? a.p : -a.p;
                int s = a.p > 0 ? 1 : -1;
                for (int i = 0; i < n; ++i) units.push_back(Atom::k(s));
                break;
            }
            default:
                units.push_back(a);
        }
    }
    return units;
}

static bool word_less_by_units(const Word& a, const Word& b) {
    std::vector<Atom> ua = explode(a), ub = explode(b);
    if (ua.size() != ub.size()) return ua.size() < ub.size();
    return std::lexicographical_compare(ua.begin(), ua.end(), ub.begin(), ub.end());
}

Word Word::cyclic_canonical() const {
    Word cur = *this;
    // Each pass takes the least normalized rotation; cancellation (k k^-1
    // across the seam) can shorten the word, so iterate to a fixpoint.
    for (;;) {
        std::vector<Atom> units = explode(cur);
        const size_t n = units.size();
        if (n <= 1) return cur;
        Word best = cur;
        for (size_t s = 1; s < n; ++s) {
            std::vector<Atom> rot(units.begin() + s, units.end());
            rot.insert(rot.end(), units.begin(), units.begin() + s);
            Word cand(std::move(rot));
            if (word_less_by_units(cand, best)) best = cand;
        }
        if (best == cur) return cur;
        cur = best;
    }
}

// ---------------------------------------------------------------------------
// NCPoly
// ---------------------------------------------------------------------------

NCPoly::NCPoly(const Rational& c) {
    if (c != 0) terms_[Word{}] = ScalarPoly(c);
}

NCPoly::NCPoly(const ScalarPoly& c, const Word& w) {
    if (!c.is_zero()) terms_[w] = c;
}

NCPoly NCPoly::atom(const Atom& a, const ScalarPoly& c) {
    return NCPoly(c, Word({a}));
}

ScalarPoly NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ScalarPoly() : it->second;
}

void NCPoly::add_term(const Word& w, const ScalarPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly out = *this;
    out += o;
    return out;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::operator-() const {
    NCPoly out;
    for (const auto& [w, c] : terms_) out.terms_[w] = -c;
    return out;
}

NCPoly NCPoly::scaled(const Rational& c) const {
    NCPoly out;
    if (c == 0) return out;
    for (const auto& [w, k] : terms_) out.terms_[w] = k.scaled(c);
    return out;
}

NCPoly NCPoly::scaled(const ScalarPoly& c) const {
    NCPoly out;
    for (const auto& [w, k] : terms_) out.add_term(w, k * c);
    return out;
}

NCPoly word_mul(const NCPoly& x, const NCPoly& y) {
    NCPoly out;
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) {
            std::vector<Atom> cat = wx.atoms;
            cat.insert(cat.end(), wy.atoms.begin(), wy.atoms.end());
            out.add_term(Word(std::move(cat)), cx * cy);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

static NCPoly word_of(std::vector<Atom> atoms, const ScalarPoly& c = ScalarPoly::one()) {
    return NCPoly(c, Word(std::move(atoms)));
}

// delta_j of a single k power by the Leibniz/inverse rules.
static NCPoly delta_of_kpow(int p, int j) {
    const Atom d = j == 1 ? Atom::dk(1, 0) : Atom::dk(0, 1);
    NCPoly out;
    if (p > 0) {
        for (int i = 0; i < p; ++i) {
            std::vector<Atom> w;
            if (i > 0) w.push_back(Atom::k(i));
            w.push_back(d);
            if (p - 1 - i > 0) w.push_back(Atom::k(p - 1 - i));
            out += word_of(std::move(w));
        }
    } else {
        // delta(k^-1) = -k^-1 delta(k) k^-1, Leibniz over |p| inverse factors.
        int n = -p;
        for (int i = 0; i < n; ++i) {
            std::vector<Atom> w;
            w.push_back(Atom::k(-i - 1));
            w.push_back(d);
            w.push_back(Atom::k(-(n - i)));
            out += word_of(std::move(w), ScalarPoly(Rational(-1)));
        }
    }
    return out;
}

// delta_j(b0) = -s * b0 (delta_j(k) k + k delta_j(k)) b0 with s the scalar
// shape of a2 at the current stage.
static NCPoly delta_of_b0(int j, Stage stage) {
    const Atom d = j == 1 ? Atom::dk(1, 0) : Atom::dk(0, 1);
    ScalarPoly s = stage == Stage::xi ? ScalarPoly::leading_shape()
                                      : ScalarPoly::variable(Var::r, 2);
    NCPoly inner = word_of({Atom::b0(1), d, Atom::k(1), Atom::b0(1)}) +
                   word_of({Atom::b0(1), Atom::k(1), d, Atom::b0(1)});
    return inner.scaled(-s);
}

// dxi_i(b0) = -(ds/dxi_i) k^2 b0^2 ; dr(b0) = -2 r k^2 b0^2.
static NCPoly partial_of_b0(Dir dir, Stage stage) {
    ScalarPoly factor;
    if (dir == Dir::dr) {
        if (stage != Stage::r) throw calc_error("dr applied before the polar substitution");
        factor = ScalarPoly(Rational(-2)) * ScalarPoly::variable(Var::r);
    } else {
        if (stage != Stage::xi) throw calc_error("dxi applied after the polar substitution");
        Var v = dir == Dir::dxi1 ? Var::xi1 : Var::xi2;
        factor = -ScalarPoly::leading_shape().derivative(v);
    }
    return word_of({Atom::b0(2), Atom::k(2)}, factor);
}

static NCPoly derive_atom(const Atom& at, Dir dir, Stage stage) {
    const bool is_delta = dir == Dir::delta1 || dir == Dir::delta2;
    switch (at.kind) {
        case AtomKind::K:
            if (!is_delta) return NCPoly();
            return delta_of_kpow(at.p, dir == Dir::delta1 ? 1 : 2);
        case AtomKind::B0: {
            NCPoly db0 = is_delta ? delta_of_b0(dir == Dir::delta1 ? 1 : 2, stage)
                                  : partial_of_b0(dir, stage);
            if (!is_delta) {
                // db0 commutes with b0 here, but keep the generic Leibniz sum
                // and let normalization merge.
            }
            NCPoly out;
            for (int i = 0; i < at.p; ++i) {
                NCPoly left = i > 0 ? NCPoly::atom(Atom::b0(i)) : NCPoly::one();
                NCPoly right = at.p - 1 - i > 0 ? NCPoly::atom(Atom::b0(at.p - 1 - i))
                                                : NCPoly::one();
                out += word_mul(word_mul(left, db0), right);
            }
            return out;
        }
        case AtomKind::DK: {
            if (!is_delta) return NCPoly();
            if (at.q2 != 0) throw calc_error("derivation applied to a twisted dk atom");
            Atom d = at;
            if (dir == Dir::delta1) d.a += 1;
            else d.b += 1;
            return NCPoly::atom(d);
        }
        case AtomKind::LogK:
            throw calc_error("derivation applied to a logk atom");
    }
    return NCPoly();
}

NCPoly derive(const NCPoly& x, Dir d, Stage stage) {
    const bool is_delta = d == Dir::delta1 || d == Dir::delta2;
    NCPoly out;
    for (const auto& [w, c] : x.terms()) {
        // Coefficient derivative (dxi/dr act on scalars too).
        if (!is_delta) {
            Var v = d == Dir::dxi1 ? Var::xi1 : d == Dir::dxi2 ? Var::xi2 : Var::r;
            ScalarPoly dc = c.derivative(v);
            if (!dc.is_zero()) out.add_term(w, dc);
        }
        // Leibniz over the atoms.
        for (size_t i = 0; i < w.atoms.size(); ++i) {
            NCPoly mid = derive_atom(w.atoms[i], d, stage);
            if (mid.is_zero()) continue;
            NCPoly left(c, Word(std::vector<Atom>(w.atoms.begin(), w.atoms.begin() + i)));
            NCPoly right(ScalarPoly::one(),
                         Word(std::vector<Atom>(w.atoms.begin() + i + 1, w.atoms.end())));
            out += word_mul(word_mul(left, mid), right);
        }
    }
    return out;
}

NCPoly star(const NCPoly& x) {
    NCPoly out;
    for (const auto& [w, c] : x.terms()) {
        std::vector<Atom> rev(w.atoms.rbegin(), w.atoms.rend());
        int sign = 1;
        for (const Atom& a : rev) {
            if (a.kind == AtomKind::DK || a.kind == AtomKind::LogK) {
                if (a.q2 != 0) throw calc_error("star of a twisted atom is out of scope");
                if ((a.a + a.b) % 2 == 1) sign = -sign;
            }
        }
        out.add_term(Word(std::move(rev)), sign == 1 ? c : -c);
    }
    return out;
}

NCPoly cyclic_normalize(const NCPoly& x) {
    NCPoly out;
    for (const auto& [w, c] : x.terms()) out.add_term(w.cyclic_canonical(), c);
    return out;
}

NCPoly substituted(const NCPoly& x, const std::map<Var, Rational>& point) {
    NCPoly out;
    for (const auto& [w, c] : x.terms()) out.add_term(w, c.substituted(point));
    return out;
}

}  // namespace nct
