#include "traceforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace traceforge {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kWeightDust = 1e-12;

// Dense tableau simplex, maximizing. Variables: m+ (0), m- (1), c_j (2..),
// slacks. Bland's rule: entering = lowest eligible index, leaving = lowest
// basis index among minimal ratios. The reduced-cost row is maintained
// through the pivots.
struct Simplex {
    std::size_t n_rows, n_cols;          // constraints, total variables
    std::vector<std::vector<double>> a;  // n_rows x (n_cols + 1), rhs last
    std::vector<double> zrow;            // reduced costs (minimization sign)
    std::vector<std::size_t> basis;

    void pivot(std::size_t pr, std::size_t pc) {
        double pv = a[pr][pc];
        for (double& v : a[pr]) v /= pv;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (r == pr || a[r][pc] == 0.0) continue;
            double f = a[r][pc];
            for (std::size_t c = 0; c <= n_cols; ++c) a[r][c] -= f * a[pr][c];
        }
        double zf = zrow[pc];
        if (zf != 0.0)
            for (std::size_t c = 0; c <= n_cols; ++c) zrow[c] -= zf * a[pr][c];
        basis[pr] = pc;
    }

    // returns the entering column on unboundedness, SIZE_MAX on optimality
    std::size_t run() {
        while (true) {
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < n_cols; ++j)
                if (zrow[j] < -kPivotEps) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            if (enter == SIZE_MAX) return SIZE_MAX;
            std::size_t leave = SIZE_MAX;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < n_rows; ++r) {
                if (a[r][enter] <= kPivotEps) continue;
                double ratio = a[r][n_cols] / a[r][enter];
                if (leave == SIZE_MAX || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == SIZE_MAX) return enter;  // unbounded ray
            pivot(leave, enter);
        }
    }
};

// exact rational Gaussian elimination for a dense square system
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> mat, std::vector<Rat> rhs) {
    const std::size_t n = mat.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && mat[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("singular tight system");
        std::swap(mat[piv], mat[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || mat[r][col] == 0) continue;
            Rat f = mat[r][col] / mat[col][col];
            for (std::size_t c = col; c < n; ++c) mat[r][c] -= f * mat[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / mat[i][i];
    return out;
}

}  // namespace

MaxMinSolution solve_maxmin(const MaxMinProblem& problem) {
    const std::size_t n = problem.points.size();
    if (n == 0) throw std::invalid_argument("max-min problem needs at least one control point");
    if (problem.log_matrix.size() != n)
        throw std::invalid_argument("log matrix row count does not match the point count");
    const std::size_t jj = problem.log_matrix.empty() ? 0 : problem.log_matrix[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(problem.points[i] > 0))
            throw std::invalid_argument("control points must be positive");
        if (problem.log_matrix[i].size() != jj)
            throw std::invalid_argument("ragged log matrix");
        for (double v : problem.log_matrix[i])
            if (!std::isfinite(v))
                throw std::invalid_argument("control point coincides with a root (infinite log)");
    }

    // constraints: m+ - m- + sum_j c_j L_ij + s_i = x_i
    Simplex sx;
    sx.n_rows = n;
    sx.n_cols = 2 + jj + n;
    sx.a.assign(n, std::vector<double>(sx.n_cols + 1, 0.0));
    // maximize m+ - m-: minimization-form reduced costs start at -cost
    sx.zrow.assign(sx.n_cols + 1, 0.0);
    sx.zrow[0] = -1.0;
    sx.zrow[1] = 1.0;
    sx.basis.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sx.a[i][0] = 1.0;
        sx.a[i][1] = -1.0;
        for (std::size_t j = 0; j < jj; ++j) sx.a[i][2 + j] = problem.log_matrix[i][j];
        sx.a[i][2 + jj + i] = 1.0;
        sx.a[i][sx.n_cols] = problem.points[i];
        sx.basis[i] = 2 + jj + i;
    }
    std::size_t verdict = sx.run();
    if (verdict != SIZE_MAX) {
        long col = static_cast<long>(verdict);
        long widx = col >= 2 && col < static_cast<long>(2 + jj) ? col - 2 : -1;
        std::ostringstream os;
        os << "unbounded: ";
        if (widx >= 0)
            os << "increasing weight " << widx
               << " improves m without limit (control set inadequate)";
        else
            os << "objective improves without limit (control set inadequate)";
        throw UnboundedError(os.str(), widx);
    }

    MaxMinSolution sol;
    sol.weights.assign(jj, 0.0);
    double mplus = 0.0, mminus = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t v = sx.basis[r];
        double val = sx.a[r][sx.n_cols];
        if (v == 0) mplus = val;
        else if (v == 1) mminus = val;
        else if (v >= 2 && v < 2 + jj) sol.weights[v - 2] = std::max(0.0, val);
    }
    sol.m = mplus - mminus;

    // exact rational recheck of the claimed vertex: the tight rows are the
    // ones whose slack left the basis; solve the square system for (m, basic
    // c_j) exactly and confirm feasibility of every constraint
    std::vector<std::size_t> basic_c;
    std::vector<bool> slack_basic(n, false);
    for (std::size_t v : sx.basis) {
        if (v >= 2 && v < 2 + jj) basic_c.push_back(v - 2);
        if (v >= 2 + jj) slack_basic[v - 2 - jj] = true;
    }
    std::sort(basic_c.begin(), basic_c.end());
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < n; ++i)
        if (!slack_basic[i]) tight.push_back(i);
    {
        // reporting: constraints binding within 1e-9
        int cnt = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double slack = problem.points[i] - sol.m;
            for (std::size_t j = 0; j < jj; ++j)
                slack -= sol.weights[j] * problem.log_matrix[i][j];
            if (std::abs(slack) <= 1e-9 * std::max(1.0, std::abs(problem.points[i]))) ++cnt;
        }
        sol.tight_constraints = cnt;
    }
    sol.rational_verified = false;
    bool mplus_basic = false, mminus_basic = false;
    for (std::size_t v : sx.basis) {
        mplus_basic |= v == 0;
        mminus_basic |= v == 1;
    }
    const std::size_t k = basic_c.size() + 1;
    if (mplus_basic && !mminus_basic && tight.size() == k) {
        std::vector<std::vector<Rat>> mat(k, std::vector<Rat>(k, Rat(0)));
        std::vector<Rat> rhs(k);
        for (std::size_t r = 0; r < k; ++r) {
            std::size_t i = tight[r];
            mat[r][0] = 1;
            for (std::size_t c = 0; c < basic_c.size(); ++c)
                mat[r][c + 1] = Rat(problem.log_matrix[i][basic_c[c]]);
            rhs[r] = Rat(problem.points[i]);
        }
        try {
            std::vector<Rat> exact = solve_exact(mat, rhs);
            bool ok = true;
            for (std::size_t c = 0; c < basic_c.size() && ok; ++c) ok = exact[c + 1] >= 0;
            for (std::size_t i = 0; i < n && ok; ++i) {
                Rat lhs = exact[0];
                for (std::size_t c = 0; c < basic_c.size(); ++c)
                    lhs += exact[c + 1] * Rat(problem.log_matrix[i][basic_c[c]]);
                ok = lhs <= Rat(problem.points[i]);
            }
            if (ok) {
                sol.rational_verified = true;
                sol.m = exact[0].get_d();
                sol.weights.assign(jj, 0.0);
                for (std::size_t c = 0; c < basic_c.size(); ++c)
                    sol.weights[basic_c[c]] = std::max(0.0, exact[c + 1].get_d());
            }
        } catch (const std::runtime_error&) {
            // degenerate tight system: keep the float vertex, flag unverified
        }
    }
    return sol;
}

bool OptimizationTrace::sandwich_ok(double slack) const {
    for (std::size_t i = 0; i < iterations.size(); ++i) {
        if (iterations[i].m_lower > iterations[i].m_upper + slack) return false;
        if (i > 0) {
            if (iterations[i].m_lower < iterations[i - 1].m_lower - slack) return false;
            if (iterations[i].m_upper > iterations[i - 1].m_upper + slack) return false;
        }
    }
    return true;
}

std::string OptimizationTrace::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"converged\":" << (converged ? "true" : "false") << ",\"gap\":" << gap
       << ",\"iterations\":[";
    for (std::size_t i = 0; i < iterations.size(); ++i) {
        if (i) os << ',';
        os << "{\"m\":" << iterations[i].m_upper << ",\"m_lower\":" << iterations[i].m_lower
           << ",\"m_lower_raw\":" << iterations[i].m_lower_raw
           << ",\"control_points\":" << iterations[i].control_points << "}";
    }
    os << "],\"weights\":[";
    for (std::size_t i = 0; i < final_weights.size(); ++i) {
        if (i) os << ',';
        os << final_weights[i];
    }
    os << "]}";
    return os.str();
}

SilpResult silp_optimize(const std::vector<IntPoly>& polys, std::vector<double> initial_points,
                         double stop_tol, int iteration_cap) {
    if (polys.empty()) throw std::invalid_argument("silp_optimize needs at least one polynomial");
    if (!(stop_tol > 0)) throw std::invalid_argument("stop_tol must be positive");
    for (const auto& p : polys)
        if (p.is_zero() || p.degree() < 1)
            throw std::invalid_argument("polynomials must be nonconstant");

    AuxMinimizer minimizer(polys);
    double rho = 1.0;
    for (const auto& p : polys) rho = std::max(rho, root_modulus_bound(p));
    const double a_init = std::max(10.0, 2.0 * rho);

    auto log_spaced = [](double lo, double hi, std::size_t count) {
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
        return out;
    };
    if (initial_points.empty()) initial_points = log_spaced(1e-3, a_init, 64);

    // control set, deduplicated to 1e-9 to keep the LP well-conditioned
    std::vector<double> control;
    auto add_point = [&](double x) {
        if (!(x > 0)) return;
        for (double y : control)
            if (std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y))) return;
        control.push_back(x);
    };
    for (double x : initial_points) add_point(x);

    OptimizationTrace trace;
    bool remedied_unbounded = false;
    const double min_tol = std::min(stop_tol, 1e-7);

    for (int iter = 0; iter < iteration_cap; ++iter) {
        std::sort(control.begin(), control.end());
        // assemble the LP, skipping points that sit on a root
        MaxMinProblem prob;
        for (double x : control) {
            std::vector<double> row(polys.size());
            bool usable = true;
            for (std::size_t j = 0; j < polys.size() && usable; ++j) {
                double v = eval_float(polys[j], x);
                if (v == 0.0)
                    usable = false;
                else
                    row[j] = std::log(std::abs(v));
            }
            if (usable) {
                prob.points.push_back(x);
                prob.log_matrix.push_back(std::move(row));
            }
        }

        MaxMinSolution sol;
        try {
            sol = solve_maxmin(prob);
        } catch (const UnboundedError&) {
            if (remedied_unbounded) throw;
            remedied_unbounded = true;
            for (double x : log_spaced(1e-3, a_init * 0.999, 32)) add_point(x);
            --iter;
            continue;
        }

        // m_i: minimum of f over the control set at the returned weights
        double m_upper = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < prob.points.size(); ++i) {
            double v = prob.points[i];
            for (std::size_t j = 0; j < polys.size(); ++j)
                v -= sol.weights[j] * prob.log_matrix[i][j];
            m_upper = std::min(m_upper, v);
        }

        MinimizationReport rep = minimizer.minimize(sol.weights, min_tol, true);
        // the certified lower bound is the best true minimum seen so far;
        // individual iterates can regress when the LP jumps vertices
        double certified =
            trace.iterations.empty() ? rep.m : std::max(rep.m, trace.iterations.back().m_lower);
        trace.iterations.push_back({m_upper, certified, rep.m, prob.points.size()});
        trace.final_weights = sol.weights;
        trace.gap = m_upper - rep.m;

        if (trace.gap <= stop_tol) {
            trace.converged = true;
            std::vector<AuxTerm> terms;
            for (std::size_t j = 0; j < polys.size(); ++j)
                terms.push_back({polys[j], sol.weights[j]});
            return {AuxFunction(std::move(terms)), std::move(trace), rep.m};
        }
        for (const auto& lm : rep.argmins) add_point(lm.x);
    }
    throw ConvergenceError("silp_optimize did not converge within the iteration cap",
                           std::move(trace));
}

}  // namespace traceforge
