#include "nctorus/symbol.hpp"

#include "nctorus/io.hpp"

namespace nct {

namespace {

ScalarPoly sp_var(Var v, int e = 1) { return ScalarPoly::variable(v, e); }

NCPoly nc(const ScalarPoly& c, std::vector<Atom> atoms) { return NCPoly(c, Word(std::move(atoms))); }

// Iterated xi-derivatives with memoization across the (l1, l2) grid.
class PartialTable {
public:
    explicit PartialTable(const NCPoly& base) { grid_[{0, 0}] = base; }

    const NCPoly& get(int l1, int l2) {
        auto it = grid_.find({l1, l2});
        if (it != grid_.end()) return it->second;
        NCPoly v;
        if (l1 > 0) v = derive(get(l1 - 1, l2), Dir::dxi1, Stage::xi);
        else v = derive(get(l1, l2 - 1), Dir::dxi2, Stage::xi);
        return grid_.emplace(std::pair<int, int>{l1, l2}, std::move(v)).first->second;
    }

private:
    std::map<std::pair<int, int>, NCPoly> grid_;
};

class DeltaTable {
public:
    explicit DeltaTable(const NCPoly& base) { grid_[{0, 0}] = base; }

    const NCPoly& get(int l1, int l2) {
        auto it = grid_.find({l1, l2});
        if (it != grid_.end()) return it->second;
        NCPoly v;
        if (l1 > 0) v = derive(get(l1 - 1, l2), Dir::delta1, Stage::xi);
        else v = derive(get(l1, l2 - 1), Dir::delta2, Stage::xi);
        return grid_.emplace(std::pair<int, int>{l1, l2}, std::move(v)).first->second;
    }

private:
    std::map<std::pair<int, int>, NCPoly> grid_;
};

Rational inv_factorials(int l1, int l2) {
    return Rational(1) / Rational(factorial(l1) * factorial(l2));
}

}  // namespace

GradedSymbol laplacian_symbol() {
    const ScalarPoly t1 = sp_var(Var::tau1);
    const ScalarPoly tt = ScalarPoly::tau_abs_sq();
    const ScalarPoly x1 = sp_var(Var::xi1);
    const ScalarPoly x2 = sp_var(Var::xi2);

    GradedSymbol s;
    // a2 = (xi1^2 + |tau|^2 xi2^2 + 2 tau1 xi1 xi2) k^2
    s.add(2, nc(ScalarPoly::leading_shape(), {Atom::k(2)}));

    NCPoly a1 = nc(Rational(2) * (x1 * ScalarPoly::one()), {Atom::k(1), Atom::dk(1, 0)});
    a1 += nc(Rational(2) * (tt * x2), {Atom::k(1), Atom::dk(0, 1)});
    a1 += nc(Rational(2) * (t1 * x1), {Atom::k(1), Atom::dk(0, 1)});
    a1 += nc(Rational(2) * (t1 * x2), {Atom::k(1), Atom::dk(1, 0)});
    s.add(1, a1);

    NCPoly a0 = nc(ScalarPoly::one(), {Atom::k(1), Atom::dk(2, 0)});
    a0 += nc(tt, {Atom::k(1), Atom::dk(0, 2)});
    a0 += nc(Rational(2) * t1, {Atom::k(1), Atom::dk(1, 1)});
    s.add(0, a0);
    return s;
}

GradedSymbol laplacian_symbol_via_product() {
    GradedSymbol k_sym;
    k_sym.add(0, NCPoly::atom(Atom::k(1)));

    GradedSymbol lap;  // sigma(Laplace) = xi1^2 + 2 tau1 xi1 xi2 + |tau|^2 xi2^2
    lap.add(2, NCPoly(ScalarPoly::leading_shape(), Word{}));

    GradedSymbol k_lap = symbol_product(k_sym, lap, -6);
    return symbol_product(k_lap, k_sym, -6);
}

GradedSymbol laplacian_plus_one() {
    GradedSymbol s = laplacian_symbol();
    s.add(2, NCPoly::one());
    return s;
}

GradedSymbol symbol_product(const GradedSymbol& p, const GradedSymbol& q, int min_order) {
    GradedSymbol out;
    for (const auto& [i, pi] : p.components) {
        PartialTable dp(pi);
        for (const auto& [j, qj] : q.components) {
            DeltaTable dq(qj);
            int budget = i + j - min_order;
            if (budget < 0) continue;
            for (int l1 = 0; l1 <= budget; ++l1)
                for (int l2 = 0; l1 + l2 <= budget; ++l2) {
                    NCPoly term = word_mul(dp.get(l1, l2), dq.get(l1, l2));
                    if (term.is_zero()) continue;
                    out.add(i + j - l1 - l2, term.scaled(inv_factorials(l1, l2)));
                }
        }
    }
    return out;
}

GradedSymbol symbol_adjoint(const GradedSymbol& p, int min_order) {
    GradedSymbol out;
    for (const auto& [i, pi] : p.components) {
        // Star first, then the mixed dxi/delta sum.
        DeltaTable ds(star(pi));
        int budget = i - min_order;
        if (budget < 0) continue;
        for (int l1 = 0; l1 <= budget; ++l1)
            for (int l2 = 0; l1 + l2 <= budget; ++l2) {
                NCPoly term = ds.get(l1, l2);
                for (int m = 0; m < l1; ++m) term = derive(term, Dir::dxi1, Stage::xi);
                for (int m = 0; m < l2; ++m) term = derive(term, Dir::dxi2, Stage::xi);
                if (term.is_zero()) continue;
                out.add(i - l1 - l2, term.scaled(inv_factorials(l1, l2)));
            }
    }
    return out;
}

GradedSymbol parametrix(int n_max) {
    if (n_max < 0) throw calc_error("parametrix order must be >= 0");
    GradedSymbol a = laplacian_symbol();
    const NCPoly b0 = NCPoly::atom(Atom::b0(1));

    std::vector<NCPoly> b;
    b.push_back(b0);

    std::vector<PartialTable> btab;
    btab.emplace_back(b0);
    std::vector<DeltaTable> atab;
    for (int k = 0; k <= 2; ++k) atab.emplace_back(a.component(k));

    for (int n = 1; n <= n_max; ++n) {
        NCPoly acc;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k <= 2; ++k) {
                int l = n - 2 - j + k;  // l1 + l2
                if (l < 0) continue;
                for (int l1 = 0; l1 <= l; ++l1) {
                    int l2 = l - l1;
                    NCPoly term = word_mul(btab[j].get(l1, l2), atab[k].get(l1, l2));
                    if (term.is_zero()) continue;
                    acc += term.scaled(inv_factorials(l1, l2));
                }
            }
        NCPoly bn = word_mul(acc, b0).scaled(Rational(-1));
        b.push_back(bn);
        btab.emplace_back(bn);
    }

    GradedSymbol out;
    for (int n = 0; n <= n_max; ++n) out.add(-2 - n, b[n]);
    return out;
}

std::string grading_violation(const GradedSymbol& s) {
    for (const auto& [order, poly] : s.components)
        for (const auto& [w, c] : poly.terms()) {
            int b0deg = w.b0_degree();
            for (const auto& [m, coeff] : c.terms()) {
                if (m.xi_degree() - 2 * b0deg != order)
                    return "order " + std::to_string(order) + " term " + to_string(w) +
                           " has xi-degree " + std::to_string(m.xi_degree()) +
                           " with b0 degree " + std::to_string(b0deg);
            }
        }
    return "";
}

}  // namespace nct
