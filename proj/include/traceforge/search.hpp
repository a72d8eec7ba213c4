#ifndef TRACEFORGE_SEARCH_HPP
#define TRACEFORGE_SEARCH_HPP

#include <string>
#include <vector>

#include "traceforge/auxfun.hpp"
#include "traceforge/intpoly.hpp"
#include "traceforge/optimizer.hpp"

namespace traceforge {

struct SearchConfig {
    int k_min = 3;
    int k_max = 82;
    double interval_cap = 10.0;      // A: control points live in (0, A]
    int candidates_per_step = 3;     // shortest reduced vectors examined
    int max_candidate_degree = 30;   // factors beyond this are discarded
    long lll_scale = 1000000;        // fixed-point scale for the forms
    Rat lll_delta{3, 4};
    double eps_root = 1e-3;          // control-point exclusion around roots
    double stop_tol = 1e-6;          // SILP stopping tolerance
    double weight_floor = 1e-12;     // weights below this count as zero
    bool dump_lattices = false;      // emit each reduced basis as text
};

struct StepRecord {
    int k = 0;
    double m_before = 0.0;
    double m_after = 0.0;
    bool fruitful = false;  // at least one new polynomial earned weight
    std::vector<IntPoly> admitted;
    std::vector<IntPoly> evicted;
    std::string error;  // nonempty when the step failed and was skipped
};

struct SearchState {
    std::vector<IntPoly> polys;
    std::vector<double> weights;
    double m = 0.0;
    std::vector<double> minima;  // local minima of the current function
    std::vector<StepRecord> history;
    std::vector<std::string> lattice_dumps;

    AuxFunction aux_function() const;
    double t() const;
    long r() const;
};

// Optimizes the one-polynomial seed function x - t ln x (optimum at t = 1,
// minimum value 1).
SearchState seed();

// One degree-k pass: build the weighted value lattice over the current
// product polynomial, LLL-reduce, factor the shortest candidates, and keep
// whatever earns weight under re-optimization. Zero-weight polynomials are
// evicted. A step that admits nothing leaves the polynomial set unchanged
// and is recorded as unfruitful.
SearchState search_step(SearchState state, int k, const SearchConfig& cfg);

// Sweeps k = k_min..k_max, never stopping early on unfruitful steps; errors
// are recorded in the step history and the sweep continues.
SearchState run_sweep(SearchState state, const SearchConfig& cfg);

// checkpointing: catalog-format polynomials/weights plus a JSON history
std::string serialize_state(const SearchState& state);
SearchState load_state(const std::string& text);
std::string history_json(const SearchState& state);

}  // namespace traceforge

#endif
