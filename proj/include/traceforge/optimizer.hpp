#ifndef TRACEFORGE_OPTIMIZER_HPP
#define TRACEFORGE_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "traceforge/auxfun.hpp"
#include "traceforge/intpoly.hpp"

namespace traceforge {

// Finite max-min LP over control points: maximize m subject to
// x_i - sum_j c_j L_ij >= m for every control point, c_j >= 0, with
// L_ij = ln|Q_j(x_i)| all finite.
struct MaxMinProblem {
    std::vector<double> points;
    std::vector<std::vector<double>> log_matrix;  // log_matrix[i][j]
};

struct MaxMinSolution {
    std::vector<double> weights;
    double m = 0.0;
    int tight_constraints = 0;   // constraints binding within 1e-9
    bool rational_verified = false;  // exact recheck of the claimed vertex
};

// Raised when some weight can grow without bound (every L_ij < 0 for that
// column): the control set is inadequate and needs more points.
class UnboundedError : public std::runtime_error {
public:
    explicit UnboundedError(const std::string& msg, long column = -1)
        : std::runtime_error(msg), weight_index(column) {}
    long weight_index;
};

struct IterationRecord {
    double m_upper = 0.0;      // min over the control set at the LP optimum
    double m_lower = 0.0;      // certified lower bound: best true minimum so far
    double m_lower_raw = 0.0;  // true minimum over (0, inf) for this iteration's weights
    std::size_t control_points = 0;
};

struct OptimizationTrace {
    std::vector<IterationRecord> iterations;
    std::vector<double> final_weights;
    bool converged = false;
    double gap = 0.0;
    // the displayed two-sided chain: lower bounds nondecreasing, upper
    // bounds nonincreasing, lower <= upper throughout (within slack)
    bool sandwich_ok(double slack = 1e-9) const;
    std::string to_json() const;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, OptimizationTrace t)
        : std::runtime_error(msg), trace(std::move(t)) {}
    OptimizationTrace trace;
};

// Deterministic dense simplex (Bland's anti-cycling rule) followed by an
// exact rational solve of the tight system to confirm the claimed vertex.
MaxMinSolution solve_maxmin(const MaxMinProblem& problem);

struct SilpResult {
    AuxFunction af;
    OptimizationTrace trace;
    double m = 0.0;
};

// Semi-infinite LP: alternate the finite LP on the control set with exact
// minimization over (0, inf); every local minimum joins the control set;
// stops when the two-sided gap closes below stop_tol. An empty
// initial_points selects 64 log-spaced points.
SilpResult silp_optimize(const std::vector<IntPoly>& polys,
                         std::vector<double> initial_points = {}, double stop_tol = 1e-6,
                         int iteration_cap = 200);

}  // namespace traceforge

#endif
