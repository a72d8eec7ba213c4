#ifndef TRACEFORGE_AUXFUN_HPP
#define TRACEFORGE_AUXFUN_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "traceforge/intpoly.hpp"

namespace traceforge {

struct AuxTerm {
    IntPoly poly;
    double weight = 0.0;
};

// The auxiliary function f(x) = x - sum_j c_j ln|Q_j(x)| over x > 0, with
// nonnegative weights c_j on nonzero, pairwise-distinct integer polynomials.
class AuxFunction {
public:
    explicit AuxFunction(std::vector<AuxTerm> terms);

    const std::vector<AuxTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    // sum of the degrees
    long r() const;
    // sum of weight * degree
    double t() const;

private:
    std::vector<AuxTerm> terms_;
};

struct LocalMin {
    double x = 0.0;
    double value = 0.0;
};

struct MinimizationReport {
    double m = 0.0;                // certified-by-sampling global minimum
    std::vector<LocalMin> argmins; // interior local minima, sorted by x
    double tail_cutoff = 0.0;      // A: beyond it the analytic bound exceeds m
    double tol = 0.0;
    int escalations = 0;           // points recomputed at 50-digit precision
    std::string to_json() const;
};

class MinimizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// f(x); +infinity exactly when some Q_j(x) = 0 with c_j > 0. x <= 0 rejected.
double eval_f(const AuxFunction& af, double x);

// Reusable minimizer: real-root isolation of the term polynomials happens
// once at construction, so the SILP loop can re-minimize under changing
// weights cheaply.
class AuxMinimizer {
public:
    explicit AuxMinimizer(std::vector<IntPoly> polys);
    ~AuxMinimizer();
    AuxMinimizer(AuxMinimizer&&) noexcept;
    AuxMinimizer& operator=(AuxMinimizer&&) noexcept;

    const std::vector<IntPoly>& polys() const;

    // Global minimization of x - sum w_j ln|Q_j(x)| over (0, inf).
    // When allow_finite_origin is false the function must diverge at 0+
    // (some Q_j(0) = 0 with w_j > 0), otherwise MinimizationError
    // "divergent at origin" is thrown. When it is true a finite limit at
    // 0+ participates as an infimum candidate (used by the optimizer and
    // the weighted-sup criterion, where the origin is a legal boundary).
    MinimizationReport minimize(const std::vector<double>& weights, double tol,
                                bool allow_finite_origin = false) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

MinimizationReport global_min(const AuxFunction& af, double tol = 1e-7);
std::vector<double> local_minima(const AuxFunction& af, double tol = 1e-7);

// Eq-style rational rewrite: a_j = round(q c_j) with q c_j within 1e-9 of an
// integer, Q = prod Q_j^a_j of degree r = sum a_j deg Q_j, t = sum c_j deg Q_j.
struct RationalizedForm {
    std::vector<std::pair<IntPoly, long>> factors;  // (Q_j, a_j)
    long r = 0;
    double t = 0.0;
    // expands prod Q_j^a_j; refuses degrees beyond the cap (the factored
    // form stays usable at any scale)
    IntPoly expand(long degree_cap = 100000) const;
};
RationalizedForm rationalize(const AuxFunction& af, long q);

// sup_{x>0} |Q(x)|^(t/r) e^(-x), equal to exp(-m) for the matching
// auxiliary function; the factored overload evaluates ln|Q| as
// sum a_j ln|Q_j| so enormous exponent vectors never get expanded.
double weighted_sup(const IntPoly& q, double t, long r, double tol = 1e-7);
double weighted_sup(const std::vector<std::pair<IntPoly, long>>& factors, double t, long r,
                    double tol = 1e-7);

}  // namespace traceforge

#endif
