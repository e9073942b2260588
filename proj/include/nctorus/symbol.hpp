#pragma once

#include <map>

#include "nctorus/word.hpp"

// Pseudodifferential symbol calculus for the conformally rescaled Laplacian
// k.Laplace.k on the noncommutative two-torus, and the parametrix recursion
// for (k.Laplace.k + 1)^{-1} (the resolvent parameter is fixed at -1 from the
// start; homogeneity makes the general parameter redundant for zeta(0)).

namespace nct {

// Finite list of symbol components indexed by homogeneity order.  With the
// resolvent folded into b0, every term of the order-n component satisfies
// deg_xi - 2*(b0 degree) = n.
struct GradedSymbol {
    std::map<int, NCPoly> components;

    NCPoly component(int order) const {
        auto it = components.find(order);
        return it == components.end() ? NCPoly() : it->second;
    }
    void add(int order, const NCPoly& p) {
        if (p.is_zero()) return;
        auto [it, fresh] = components.emplace(order, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) components.erase(it);
        }
    }
    bool operator==(const GradedSymbol& o) const { return components == o.components; }
};

// sigma(k.Laplace.k) = a2 + a1 + a0:
//   a2 = xi1^2 k^2 + |tau|^2 xi2^2 k^2 + 2 tau1 xi1 xi2 k^2
//   a1 = 2 xi1 k dk1 + 2|tau|^2 xi2 k dk2 + 2 tau1 xi1 k dk2 + 2 tau1 xi2 k dk1
//   a0 = k dk(2,0) + |tau|^2 k dk(0,2) + 2 tau1 k dk(1,1)
GradedSymbol laplacian_symbol();

// Same operator assembled as sigma(k) * sigma(Laplace) * sigma(k) through the
// composition rule; must agree with laplacian_symbol() exactly.
GradedSymbol laplacian_symbol_via_product();

// Composition: sigma(PQ) = sum 1/(l1! l2!) dxi1^l1 dxi2^l2(rho) d1^l1 d2^l2(rho'),
// truncated to components of order >= min_order.
GradedSymbol symbol_product(const GradedSymbol& p, const GradedSymbol& q, int min_order);

// Adjoint: sigma(P^*) = sum 1/(l1! l2!) dxi1^l1 dxi2^l2 d1^l1 d2^l2 (rho^*).
GradedSymbol symbol_adjoint(const GradedSymbol& p, int min_order);

// Parametrix components {-2: b0, ..., -2-n_max: b_{n_max}} with b0 the atomic
// resolvent factor and
//   b_n = - sum_{2+j+l1+l2-k = n, j<n, k<=2} 1/(l1! l2!)
//             dxi1^l1 dxi2^l2(b_j) d1^l1 d2^l2(a_k) b0 .
GradedSymbol parametrix(int n_max);

// sigma(k.Laplace.k + 1) with the constant treated as a symbol of order 2.
GradedSymbol laplacian_plus_one();

// Checks deg_xi - 2*b0deg == order for every term of every component; returns
// the first offending description or the empty string.
std::string grading_violation(const GradedSymbol& s);

}  // namespace nct
