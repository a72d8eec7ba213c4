#ifndef TRACEFORGE_LLL_HPP
#define TRACEFORGE_LLL_HPP

#include <string>
#include <vector>

#include "traceforge/intpoly.hpp"

namespace traceforge {

// Row-major integer lattice basis with the LLL reduction parameter.
struct LatticeBasis {
    std::vector<std::vector<Int>> rows;
    Rat delta{3, 4};

    std::size_t dimension() const { return rows.size(); }
    std::size_t columns() const { return rows.empty() ? 0 : rows[0].size(); }
    // whitespace-separated integer rows, one row per line
    std::string to_text() const;
};

// Search lattice for degree-k candidate polynomials against the weighted
// form Q(x) x^l exp(-x (r+k)/t): one row per monomial power l = 0..k,
// a (k+1)-wide identity block first so integer combinations stay readable
// as polynomial coefficients, then one fixed-point value column per control
// point.
struct SearchLatticeSpec {
    IntPoly base_poly;                   // product of the current auxiliary set
    int k = 1;                           // candidate degree
    double t = 1.0;                      // current weight total
    long r = 0;                          // current degree total
    std::vector<double> control_points;  // positive, away from roots of base_poly
    Int scale{1000000};                  // fixed-point scale before rounding
    double eps_root = 1e-3;              // exclusion distance around roots
};

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact-arithmetic LLL: returns a basis of the same lattice satisfying size
// reduction (|mu_ij| <= 1/2) and the Lovasz condition at basis.delta.
// Throws LatticeError on dependent rows.
LatticeBasis lll_reduce(const LatticeBasis& basis);

// Drops control points within spec.eps_root of a real root of Q (the forms
// vanish there and carry no information).
std::vector<double> filter_control_points(const std::vector<double>& points, const IntPoly& q,
                                          double eps_root);

// Builds the lattice described by spec. Throws LatticeError when a control
// point violates the root-distance invariant, when fewer than k+1 control
// points remain, or when a value column is entirely zero.
LatticeBasis build_search_lattice(const SearchLatticeSpec& spec);

// Reads the coefficient block of the n_vectors shortest rows of a reduced
// basis, returning primitive candidate polynomials (zero rows and sign
// duplicates dropped).
std::vector<IntPoly> extract_candidates(const LatticeBasis& reduced, const SearchLatticeSpec& spec,
                                        int n_vectors);

}  // namespace traceforge

#endif
