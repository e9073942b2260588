#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nctorus/io.hpp"
#include "nctorus/word.hpp"

using namespace nct;

namespace {

NCPoly nc(const std::string& line) { return parse_ncpoly(line + "\n"); }

// Small random noncommutative polynomials for property tests: words over
// b0, k^{+-}, dk with low-degree scalar coefficients.
NCPoly random_ncpoly(std::mt19937_64& rng, bool allow_negative_k = true) {
    std::uniform_int_distribution<int> nterms(1, 3), wlen(0, 3), akind(0, 2), coeff(-4, 4),
        kexp(-2, 2), scalar_exp(0, 2);
    NCPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<Atom> atoms;
        int len = wlen(rng);
        for (int j = 0; j < len; ++j) {
            switch (akind(rng)) {
                case 0: atoms.push_back(Atom::b0(1 + (rng() % 2))); break;
                case 1: {
                    int p2 = kexp(rng);
                    if (!allow_negative_k && p2 < 0) p2 = -p2;
                    if (p2 == 0) p2 = 1;
                    atoms.push_back(Atom::k(p2));
                    break;
                }
                default:
                    atoms.push_back(rng() % 2 ? Atom::dk(1, 0) : Atom::dk(0, 1));
            }
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        ScalarMono m;
        m.set(Var::xi1, scalar_exp(rng));
        m.set(Var::tau1, scalar_exp(rng));
        p.add_term(Word(std::move(atoms)), ScalarPoly(Rational(c), m));
    }
    return p;
}

}  // namespace

TEST_CASE("normal form merges blocks and commutes b0 past k") {
    // k * b0 normalizes with b0 leading.
    NCPoly kb = word_mul(NCPoly::atom(Atom::k(1)), NCPoly::atom(Atom::b0(1)));
    CHECK(kb == nc("1 | b0^1 k^1"));

    // k * k^-1 collapses to the empty word.
    NCPoly kk = word_mul(NCPoly::atom(Atom::k(1)), NCPoly::atom(Atom::k(-1)));
    CHECK(kk == NCPoly::one());

    // No merge across a dk atom.
    NCPoly a = nc("1 | b0^1 k^2 dk(1,0;0)");
    NCPoly b = nc("1 | b0^1 dk(1,0;0)");
    CHECK(word_mul(a, b) == nc("1 | b0^1 k^2 dk(1,0;0) b0^1 dk(1,0;0)"));
}

TEST_CASE("word_mul is associative and bilinear") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 400; ++t) {
        NCPoly a = random_ncpoly(rng), b = random_ncpoly(rng), c = random_ncpoly(rng);
        CHECK(word_mul(word_mul(a, b), c) == word_mul(a, word_mul(b, c)));
        CHECK(word_mul(a + b, c) == word_mul(a, c) + word_mul(b, c));
    }
}

TEST_CASE("derivation atom rules") {
    // dr(b0) = -2 r k^2 b0^2
    NCPoly db0 = derive(NCPoly::atom(Atom::b0(1)), Dir::dr, Stage::r);
    CHECK(db0 == nc("-2*r^1 | b0^2 k^2"));

    // delta_1(k^2) = dk k + k dk
    NCPoly dk2 = derive(NCPoly::atom(Atom::k(2)), Dir::delta1);
    CHECK(dk2 == nc("1 | dk(1,0;0) k^1") + nc("1 | k^1 dk(1,0;0)"));

    // delta_2(b0) = -s(xi) * b0 (dk2 k + k dk2) b0
    NCPoly db2 = derive(NCPoly::atom(Atom::b0(1)), Dir::delta2);
    ScalarPoly s = ScalarPoly::leading_shape();
    NCPoly expect = (nc("1 | b0^1 dk(0,1;0) k^1 b0^1") + nc("1 | b0^1 k^1 dk(0,1;0) b0^1"))
                        .scaled(-s);
    CHECK(db2 == expect);

    // delta of k^-1 via the inverse rule.
    NCPoly dki = derive(NCPoly::atom(Atom::k(-1)), Dir::delta1);
    CHECK(dki == nc("-1 | k^-1 dk(1,0;0) k^-1"));

    // Stage guards.
    CHECK_THROWS_AS(derive(NCPoly::atom(Atom::b0(1)), Dir::dr, Stage::xi), calc_error);
    CHECK_THROWS_AS(derive(NCPoly::atom(Atom::b0(1)), Dir::dxi1, Stage::r), calc_error);
}

TEST_CASE("Leibniz rule on randomized products") {
    std::mt19937_64 rng(13);
    const Dir dirs[] = {Dir::delta1, Dir::delta2, Dir::dxi1, Dir::dxi2};
    int checked = 0;
    for (int t = 0; t < 1200; ++t) {
        NCPoly a = random_ncpoly(rng), b = random_ncpoly(rng);
        Dir d = dirs[t % 4];
        NCPoly lhs = derive(word_mul(a, b), d);
        NCPoly rhs = word_mul(derive(a, d), b) + word_mul(a, derive(b, d));
        CHECK(lhs == rhs);
        ++checked;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("delta1 and delta2 commute") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        NCPoly a = random_ncpoly(rng);
        CHECK(derive(derive(a, Dir::delta1), Dir::delta2) ==
              derive(derive(a, Dir::delta2), Dir::delta1));
    }
}

TEST_CASE("cyclic normalization") {
    // Trailing b0 rotates to the front and merges.
    NCPoly a = nc("1 | b0^1 k^1 dk(2,0;0) b0^1");
    CHECK(cyclic_normalize(a) == nc("1 | b0^2 k^1 dk(2,0;0)"));

    CHECK(Word{}.cyclic_canonical() == Word{});

    // dk(1,0) b0 and b0 dk(1,0) are the same trace class.
    NCPoly x = nc("1 | dk(1,0;0) b0^1");
    NCPoly y = nc("1 | b0^1 dk(1,0;0)");
    CHECK(cyclic_normalize(x) == cyclic_normalize(y));

    // k k^-1 cancellation across the seam.
    NCPoly z = nc("1 | k^-1 dk(1,0;0) k^1");
    CHECK(cyclic_normalize(z) == nc("1 | dk(1,0;0)"));

    // Idempotence and rotation invariance on random words.
    std::mt19937_64 rng(19);
    for (int t = 0; t < 300; ++t) {
        NCPoly p = random_ncpoly(rng, /*allow_negative_k=*/false);
        if (p.is_zero()) continue;
        const Word w = p.terms().begin()->first;
        Word cw = w.cyclic_canonical();
        CHECK(cw.cyclic_canonical() == cw);
        for (size_t s = 1; s < w.atoms.size(); ++s) {
            std::vector<Atom> rot(w.atoms.begin() + s, w.atoms.end());
            rot.insert(rot.end(), w.atoms.begin(), w.atoms.begin() + s);
            CHECK(Word(std::move(rot)).cyclic_canonical() == cw);
        }
    }
}

TEST_CASE("star is an involutive antihomomorphism") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 300; ++t) {
        NCPoly a = random_ncpoly(rng), b = random_ncpoly(rng);
        CHECK(star(star(a)) == a);
        CHECK(star(word_mul(a, b)) == word_mul(star(b), star(a)));
    }
    // delta_j(k)^* = -delta_j(k); second derivatives are selfadjoint.
    CHECK(star(nc("1 | dk(1,0;0)")) == nc("-1 | dk(1,0;0)"));
    CHECK(star(nc("1 | dk(1,1;0)")) == nc("1 | dk(1,1;0)"));
}

TEST_CASE("word grammar round-trips") {
    const char* words[] = {"b0^2 k^2 dk(1,0;0) b0^1 dk(1,0;0)", "k^-2 dk(1,0;0) dk(0,1;0)",
                           "b0^3 k^4 dk(1,0;1/2) b0^1 dk(0,1;0)", "1",
                           "logk(1,0;0) logk(0,1;-1/2)"};
    for (const char* w : words) CHECK(to_string(parse_word(w)) == w);

    CHECK_THROWS_AS(parse_word("b0^"), parse_error);
    CHECK_THROWS_AS(parse_word("dk(1,0"), parse_error);
    CHECK_THROWS_AS(parse_ncpoly("3*r | no-separator"), parse_error);
}

TEST_CASE("pretty printer recollects tau groups") {
    NCPoly a2 = NCPoly(ScalarPoly::leading_shape(), parse_word("k^2"));
    CHECK(pretty(a2) == "xi1^2*k^2 + (tau1^2+tau2^2)*xi2^2*k^2 + 2*tau1*xi1*xi2*k^2");
}
