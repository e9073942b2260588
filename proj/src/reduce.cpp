#include "nctorus/reduce.hpp"

#include <algorithm>

#include "nctorus/io.hpp"

namespace nct {

ScalarPoly reduction_prefactor() {
    return Rational(2) * (ScalarPoly::variable(Var::pi) * ScalarPoly::variable(Var::tau2, -1));
}

// ---------------------------------------------------------------------------
// Polar substitution and angular integration
// ---------------------------------------------------------------------------

TrigPoly polar_substitute(const NCPoly& x) {
    TrigPoly out;
    const ScalarPoly jac =
        ScalarPoly::variable(Var::r) * ScalarPoly::variable(Var::tau2, -1);
    for (const auto& [w, poly] : x.terms()) {
        auto& slots = out.entries[w];
        for (const auto& [m, c] : poly.terms()) {
            const int a = m.exp(Var::xi1), b = m.exp(Var::xi2);
            if (m.exp(Var::r) != 0 || m.exp(Var::u) != 0)
                throw calc_error("polar substitution applied off the xi stage");
            ScalarMono rest = m;
            rest.set(Var::xi1, 0);
            rest.set(Var::xi2, 0);
            // xi1^a = sum_j C(a,j) cos^j (-tau1/tau2)^{a-j} sin^{a-j} r^a
            // xi2^b = (r/tau2)^b sin^b
            for (int j = 0; j <= a; ++j) {
                Rational binom(factorial(a), factorial(j) * factorial(a - j));
                ScalarMono factor = rest;
                factor.set(Var::r, rest.exp(Var::r) + a + b);
                factor.set(Var::tau1, rest.exp(Var::tau1) + (a - j));
                factor.set(Var::tau2, rest.exp(Var::tau2) - (a - j) - b);
                Rational coeff = c * binom;
                if ((a - j) % 2 == 1) coeff = -coeff;
                ScalarPoly term(coeff, factor);
                term = term * jac;
                auto key = std::make_pair(j, (a - j) + b);
                auto [it, fresh] = slots.emplace(key, term);
                if (!fresh) it->second += term;
            }
        }
    }
    return out;
}

// int_0^{2pi} cos^a sin^b dt = 2 pi (a-1)!!(b-1)!!/(a+b)!! for even a, b.
static Rational angular_weight(int a, int b) {
    if (a % 2 == 1 || b % 2 == 1) return Rational(0);
    return Rational(double_factorial(a - 1) * double_factorial(b - 1)) /
           Rational(double_factorial(a + b));
}

NCPoly angular_integrate(const TrigPoly& t) {
    // The 2 pi of the angular integral and the tau2 of the Jacobian combine
    // into the recorded prefactor 2*pi/tau2, so each surviving entry is
    // scaled by the weight alone times tau2.
    const ScalarPoly tau2 = ScalarPoly::variable(Var::tau2);
    NCPoly out;
    for (const auto& [w, slots] : t.entries)
        for (const auto& [cs, poly] : slots) {
            Rational wgt = angular_weight(cs.first, cs.second);
            if (wgt == 0) continue;
            out.add_term(w, poly.scaled(wgt) * tau2);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

// Structural view of a radial word: maximal b0/k blocks alternating with dk
// atoms, cyclically.
struct BlockView {
    struct Block {
        int b0 = 0;
        int k = 0;
    };
    std::vector<Block> blocks;  // block i precedes dk i
    std::vector<Atom> dks;
    bool ok = false;
};

// Reads w as block dk block dk ... ; trailing blocks wrap onto the front one
// (trace context).
BlockView block_view(const Word& w) {
    BlockView v;
    if (w.empty()) return v;
    std::vector<std::pair<BlockView::Block, bool>> seq;  // (block, is_dk marker)
    BlockView::Block cur;
    bool have_cur = false;
    for (const Atom& a : w.atoms) {
        if (a.kind == AtomKind::B0) {
            cur.b0 += a.p;
            have_cur = true;
        } else if (a.kind == AtomKind::K) {
            cur.k += a.p;
            have_cur = true;
        } else if (a.kind == AtomKind::DK) {
            v.blocks.push_back(cur);
            v.dks.push_back(a);
            cur = {};
            have_cur = false;
        } else {
            return v;  // logk atoms never reach this stage
        }
    }
    if (v.dks.empty()) return v;
    if (have_cur) {
        // Wrap the trailing block onto the leading one.
        v.blocks[0].b0 += cur.b0;
        v.blocks[0].k += cur.k;
    }
    v.ok = true;
    return v;
}

}  // namespace

TermClass classify(const Word& w) {
    BlockView v = block_view(w);
    if (!v.ok) throw calc_error("unclassifiable word: " + to_string(w));
    if (v.dks.size() == 1) return TermClass::AllLeft;
    if (v.dks.size() == 2) {
        // Exactly one of the two blocks is the interior one; for the radial
        // lists the non-middle block always carries b0 degree >= 2, the
        // middle one degree 1 or 2.
        int m0 = v.blocks[0].b0, m1 = v.blocks[1].b0;
        if (m0 == 0 && m1 == 0) return TermClass::AllLeft;  // adjacent dk pair
        int middle = std::min(m0, m1);
        if (middle == 0) return TermClass::AllLeft;
        if (middle == 1) return TermClass::SingleMiddle;
        if (middle == 2 && std::max(m0, m1) > 2) return TermClass::SquaredMiddle;
        if (middle == 2 && std::max(m0, m1) == 2) return TermClass::SquaredMiddle;
        throw calc_error("word with b0^" + std::to_string(middle) +
                         " in the middle is outside the three radial families: " + to_string(w));
    }
    throw calc_error("word with " + std::to_string(v.dks.size()) +
                     " derivative atoms cannot be classified: " + to_string(w));
}

ClassifiedTerms classify_terms(const NCPoly& radial) {
    ClassifiedTerms out;
    for (const auto& [w, c] : radial.terms()) {
        switch (classify(w)) {
            case TermClass::AllLeft: out.all_left.add_term(w, c); break;
            case TermClass::SingleMiddle: out.single_middle.add_term(w, c); break;
            case TermClass::SquaredMiddle: out.squared_middle.add_term(w, c); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// AllLeft family: Beta closed form
// ---------------------------------------------------------------------------

NCPoly integrate_all_left(const NCPoly& all_left) {
    NCPoly out;
    for (const auto& [w, poly] : all_left.terms()) {
        // Shape b0^m k^p (dk tail); rotate any stray leading k into place is
        // unnecessary: canonical forms already start with the b0 block.
        size_t idx = 0;
        int m = 0, p = 0;
        if (idx < w.atoms.size() && w.atoms[idx].kind == AtomKind::B0) m = w.atoms[idx++].p;
        if (idx < w.atoms.size() && w.atoms[idx].kind == AtomKind::K) p = w.atoms[idx++].p;
        std::vector<Atom> tail(w.atoms.begin() + idx, w.atoms.end());
        for (const Atom& a : tail)
            if (a.kind != AtomKind::DK)
                throw calc_error("AllLeft word has interior structure: " + to_string(w));
        if (m <= 0) throw calc_error("AllLeft word lacks the b0 block: " + to_string(w));

        for (const auto& [mono, c] : poly.terms()) {
            int rpow = mono.exp(Var::r);
            if (rpow % 2 != 1)
                throw calc_error("even r power in radial term: " + to_string(w));
            int a = (rpow - 1) / 2;
            if (m - a - 1 < 1)
                throw calc_error("divergent radial integral (pipeline bug): r^" +
                                 std::to_string(rpow) + " " + to_string(w));
            // int_0^inf r^{2a+1} (r^2 k^2 + 1)^{-m} dr = (1/2) B(a+1, m-a-1) k^{-2a-2}
            Rational val = beta_int(a + 1, m - a - 1) / 2;
            ScalarMono rest = mono;
            rest.set(Var::r, 0);
            std::vector<Atom> atoms;
            if (p - 2 * a - 2 != 0) atoms.push_back(Atom::k(p - 2 * a - 2));
            atoms.insert(atoms.end(), tail.begin(), tail.end());
            out.add_term(Word(std::move(atoms)), ScalarPoly(c * val, rest));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integration by parts for b0^2 in the middle
// ---------------------------------------------------------------------------

namespace {

// Orientation of a two-dk word: rotate so the word reads
// b0^{M} k^{P} dk_first b0^{middle} k^{Q} dk_second with the designated
// middle block interior.  head_dk_index selects which dk leads.
struct Oriented {
    int M, P, Q;
    Atom dk_head, dk_tail;
    int middle_b0;
};

Oriented orient(const Word& w, int middle_block /*0 or 1: block preceding dks[middle]*/) {
    BlockView v = block_view(w);
    if (!v.ok || v.dks.size() != 2) throw calc_error("orientation needs two dk atoms");
    int head_block = 1 - middle_block;
    Oriented o;
    o.M = v.blocks[head_block].b0;
    o.P = v.blocks[head_block].k;
    o.middle_b0 = v.blocks[middle_block].b0;
    o.Q = v.blocks[middle_block].k;
    // The dk closing the head block is the one *preceding* the middle block.
    o.dk_head = v.dks[middle_block == 1 ? 0 : 1];
    o.dk_tail = v.dks[middle_block == 1 ? 1 : 0];
    return o;
}

Word assemble(int M, int P, const Atom& dk_head, int mid_b0, int Q, const Atom& dk_tail) {
    std::vector<Atom> atoms;
    if (M > 0) atoms.push_back(Atom::b0(M));
    if (P != 0) atoms.push_back(Atom::k(P));
    atoms.push_back(dk_head);
    if (mid_b0 > 0) atoms.push_back(Atom::b0(mid_b0));
    if (Q != 0) atoms.push_back(Atom::k(Q));
    atoms.push_back(dk_tail);
    return Word(std::move(atoms));
}

int dk_index(const Atom& a) {
    if (a.a == 1 && a.b == 0) return 1;
    if (a.a == 0 && a.b == 1) return 2;
    throw calc_error("expected a first-order dk atom");
}

}  // namespace

NCPoly ibp_rewrite(const NCPoly& squared_middle) {
    NCPoly out;
    for (const auto& [w, poly] : squared_middle.terms()) {
        if (classify(w) != TermClass::SquaredMiddle)
            throw calc_error("ibp_rewrite requires b0^2 in the middle: " + to_string(w));
        BlockView v = block_view(w);
        // Candidate middles: the b0^2 block must be followed by k^{Q>=2} so a
        // factor r b0^2 k^2 = -(1/2) dr(b0) can be peeled off.  When both
        // orientations qualify, keep delta_1 on the head; this is the
        // orientation the downstream symmetric treatment expects.
        std::vector<int> candidates;
        for (int mb = 0; mb < 2; ++mb) {
            if (v.blocks[mb].b0 != 2) continue;
            if (v.blocks[mb].k < 2) continue;
            if (v.blocks[1 - mb].b0 < 2) continue;
            candidates.push_back(mb);
        }
        if (candidates.empty())
            throw calc_error("no valid IBP orientation for: " + to_string(w));
        int chosen = candidates[0];
        if (candidates.size() == 2) {
            for (int mb : candidates)
                if (dk_index(v.dks[mb == 1 ? 0 : 1]) == 1) chosen = mb;
        }
        Oriented o = orient(w, chosen);

        for (const auto& [mono, c] : poly.terms()) {
            int rpow = mono.exp(Var::r);
            if (rpow < 1) throw calc_error("IBP term without an r factor");
            ScalarMono rest = mono;
            // c r^A L dr-target R  ->  -(c/2) r^{A-1} L' with L' = dr(r^{A-1} b0^M k^P)
            // after moving the derivative off dr(b0):
            //   (c/2)(A-1) r^{A-2} b0^M k^P dk b0 k^{Q-2} dk
            //   - c M r^A b0^{M+1} k^{P+2} dk b0 k^{Q-2} dk
            int A = rpow;
            rest.set(Var::r, A - 2);
            out.add_term(assemble(o.M, o.P, o.dk_head, 1, o.Q - 2, o.dk_tail),
                         ScalarPoly(c * Rational(A - 1) / 2, rest));
            rest.set(Var::r, A);
            out.add_term(assemble(o.M + 1, o.P + 2, o.dk_head, 1, o.Q - 2, o.dk_tail),
                         ScalarPoly(-c * Rational(o.M), rest));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Single-middle terms: the D_m functional calculus template
// ---------------------------------------------------------------------------

ModularTerm apply_Dm(const ScalarPoly& coeff, const Word& w) {
    BlockView v = block_view(w);
    if (!v.ok || v.dks.size() != 2) throw calc_error("apply_Dm needs two dk atoms");
    // The middle is the b0^1 block; the head block's degree is m+1 >= 2.
    int middle = -1;
    for (int mb = 0; mb < 2; ++mb)
        if (v.blocks[mb].b0 == 1 && v.blocks[1 - mb].b0 >= 2) middle = mb;
    if (middle < 0) throw calc_error("no b0^1 middle in: " + to_string(w));
    Oriented o = orient(w, middle);

    const int m = o.M - 1;
    if (m < 1 || m > 3) throw calc_error("D_m index out of range for: " + to_string(w));
    if (o.P + o.Q != 2 * m)
        throw calc_error("k-power budget violated (have k^" + std::to_string(o.P) + ", k^" +
                         std::to_string(o.Q) + ", need total " + std::to_string(2 * m) +
                         ") in: " + to_string(w));

    ModularTerm t;
    t.i = dk_index(o.dk_head);
    t.j = dk_index(o.dk_tail);
    t.m = m;
    t.q2 = o.Q;  // inner k^Q absorbed as Delta^{Q/2} on the head factor

    // u = r^2 substitution: int r^{2m+1} ... dr = (1/2) int u^m ... du, and the
    // remaining k-power matches the lemma template after extracting k^{-2}.
    ScalarPoly halved;
    for (const auto& [mono, c] : coeff.terms()) {
        if (mono.exp(Var::r) != 2 * m + 1)
            throw calc_error("r-power budget violated in: " + to_string(w));
        ScalarMono rest = mono;
        rest.set(Var::r, 0);
        halved.add_term(rest, c / 2);
    }
    t.coeff = halved;
    return t;
}

bool is_symmetric_split_target(const Word& w) {
    static const Word target = Word({Atom::b0(3), Atom::k(4), Atom::dk(1, 0), Atom::b0(1),
                                     Atom::dk(0, 1)});
    return w == target.cyclic_canonical();
}

ModularTermList symmetric_split(const ScalarPoly& coeff, const Word& w) {
    if (!is_symmetric_split_target(w))
        throw calc_error("symmetric_split applies only to the b0^3 k^4 dk1 b0 dk2 term");
    // One more pass of r^4 b0^2 = -(1/2)-antiderivative bookkeeping plus a
    // trace-symmetric splitting of the remaining integral yields, per unit
    // coefficient c r^5:
    //   (c/4) [ D1(dk1)dk2 + D2(dk1)dk2 - D1(dk2)dk1 + D2(dk2)dk1 ].
    ScalarPoly quarter;
    for (const auto& [mono, c] : coeff.terms()) {
        if (mono.exp(Var::r) != 5)
            throw calc_error("symmetric split target must carry r^5");
        ScalarMono rest = mono;
        rest.set(Var::r, 0);
        quarter.add_term(rest, c / 4);
    }
    ModularTermList out;
    out.push_back({1, 2, 1, 0, quarter});
    out.push_back({1, 2, 2, 0, quarter});
    out.push_back({2, 1, 1, 0, -quarter});
    out.push_back({2, 1, 2, 0, quarter});
    return out;
}

std::map<std::tuple<int, int, int, int>, ScalarPoly> merged(const ModularTermList& terms) {
    std::map<std::tuple<int, int, int, int>, ScalarPoly> out;
    for (const ModularTerm& t : terms) {
        auto key = std::make_tuple(t.i, t.j, t.m, t.q2);
        auto [it, fresh] = out.emplace(key, t.coeff);
        if (!fresh) it->second += t.coeff;
        if (it->second.is_zero()) out.erase(key);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Full reduction
// ---------------------------------------------------------------------------

ReduceResult reduce_b2(const NCPoly& b2) {
    ReduceResult res;
    res.cyclic = cyclic_normalize(b2);
    res.radial = cyclic_normalize(angular_integrate(polar_substitute(res.cyclic)));
    res.split = classify_terms(res.radial);

    res.all_left_closed = integrate_all_left(res.split.all_left);

    res.single_all = res.split.single_middle;
    res.single_all += cyclic_normalize(ibp_rewrite(res.split.squared_middle));

    for (const auto& [w, c] : res.single_all.terms()) {
        if (is_symmetric_split_target(w)) {
            ModularTermList sym = symmetric_split(c, w);
            res.dterms.insert(res.dterms.end(), sym.begin(), sym.end());
            res.dterms_unsym.push_back(apply_Dm(c, w));
        } else {
            ModularTerm t = apply_Dm(c, w);
            res.dterms.push_back(t);
            res.dterms_unsym.push_back(t);
        }
    }
    return res;
}

}  // namespace nct
