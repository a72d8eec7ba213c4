#ifndef TRACEFORGE_FACTOR_HPP
#define TRACEFORGE_FACTOR_HPP

#include <utility>
#include <vector>

#include "traceforge/intpoly.hpp"

namespace traceforge {

// Complete factorization over the integers: unit is +-content, factors are
// primitive, irreducible over the rationals, with positive leading
// coefficient, sorted by (degree, lexicographic coefficients).
// unit * prod factor^multiplicity reproduces the input exactly.
struct Factorization {
    Int unit;
    std::vector<std::pair<IntPoly, int>> factors;

    IntPoly product() const;
    std::string to_string() const;  // "unit * (f1)^m1 * ..."
};

// Yun decomposition: parts are pairwise coprime and square-free; the product
// with multiplicities reproduces p divided by its (signed) content.
std::vector<std::pair<IntPoly, int>> squarefree_decompose(const IntPoly& p);

// Zassenhaus: square-free decomposition, factorization modulo a good prime,
// Hensel lifting past the Landau-Mignotte bound, subset recombination.
Factorization factor(const IntPoly& p);

bool is_irreducible(const IntPoly& p);

}  // namespace traceforge

#endif
