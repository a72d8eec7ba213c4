#include "traceforge/auxfun.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "traceforge/kernels.hpp"
#include "traceforge/parallel.hpp"

namespace traceforge {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr mpfr_prec_t kEscalatedPrec = 166;  // ~50 decimal digits
constexpr double kCancelThreshold = 1e-8;    // |Q(x)| below this times the
                                             // coefficient scale escalates
}  // namespace

AuxFunction::AuxFunction(std::vector<AuxTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty())
        throw std::invalid_argument("auxiliary function needs at least one term");
    for (const auto& t : terms_) {
        if (t.poly.is_zero())
            throw std::invalid_argument("auxiliary function term polynomial is zero");
        if (!(t.weight >= 0.0))
            throw std::invalid_argument("auxiliary function weight must be nonnegative");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i)
        for (std::size_t j = i + 1; j < terms_.size(); ++j)
            if (terms_[i].poly == terms_[j].poly)
                throw std::invalid_argument("auxiliary function terms must be pairwise distinct");
}

long AuxFunction::r() const {
    long acc = 0;
    for (const auto& t : terms_) acc += t.poly.degree();
    return acc;
}

double AuxFunction::t() const {
    double acc = 0.0;
    for (const auto& t : terms_) acc += t.weight * t.poly.degree();
    return acc;
}

double eval_f(const AuxFunction& af, double x) {
    if (!(x > 0)) throw std::invalid_argument("eval_f requires x > 0");
    double acc = x;
    for (const auto& term : af.terms()) {
        if (term.weight == 0.0) continue;
        double v = eval_float(term.poly, x);
        if (v == 0.0) return kInf;
        acc -= term.weight * std::log(std::abs(v));
    }
    return acc;
}

// ---------------------------------------------------------------------------

struct AuxMinimizer::Impl {
    struct Term {
        IntPoly poly;
        IntPoly deriv;
        std::vector<double> coeffs;      // little-endian double image
        std::vector<double> dcoeffs;     // derivative
        std::vector<double> abs_coeffs;  // |coeffs|, conditioning scale
        int deg = 0;
        double root_bound = 1.0;  // modulus bound for every complex root
        double log_abs_lc = 0.0;
        struct Zone {
            double lo, hi;
        };
        std::vector<Zone> zones;  // exclusion zones around positive real roots
    };

    std::vector<Term> terms;
    std::vector<IntPoly> originals;
    mutable std::atomic<int> escalations{0};

    explicit Impl(std::vector<IntPoly> polys) {
        originals = polys;
        const Rat width(1, 1 << 21);  // ~5e-7 isolation width
        terms.reserve(polys.size());
        for (auto& p : polys) {
            Term t;
            t.deg = p.degree();
            t.coeffs.resize(static_cast<std::size_t>(t.deg) + 1);
            t.dcoeffs.resize(std::max<std::size_t>(t.deg, 1));
            t.abs_coeffs.resize(t.coeffs.size());
            t.deriv = derivative(p);
            for (int i = 0; i <= t.deg; ++i) {
                t.coeffs[static_cast<std::size_t>(i)] = p.coeff(i).get_d();
                t.abs_coeffs[static_cast<std::size_t>(i)] =
                    std::abs(t.coeffs[static_cast<std::size_t>(i)]);
            }
            if (t.deg >= 1)
                for (int i = 0; i < t.deg; ++i)
                    t.dcoeffs[static_cast<std::size_t>(i)] = t.deriv.coeff(i).get_d();
            else
                t.dcoeffs[0] = 0.0;
            t.root_bound = std::max(1.0, root_modulus_bound(p));
            t.log_abs_lc = std::log(std::abs(p.leading().get_d()));
            if (t.deg >= 1) {
                for (const auto& iv : isolate_real_roots(p, width)) {
                    double lo = iv.lo.get_d();
                    double hi = iv.hi.get_d();
                    if (hi <= 0) continue;
                    lo = lo - (1e-13 + 8 * std::numeric_limits<double>::epsilon() * std::abs(lo));
                    hi = hi + (1e-13 + 8 * std::numeric_limits<double>::epsilon() * std::abs(hi));
                    t.zones.push_back({lo, hi});
                }
            }
            t.poly = std::move(p);
            terms.push_back(std::move(t));
        }
    }

    // ---- escalated (50-digit) single-point paths --------------------------

    double eval_f_mpfr(const std::vector<double>& w, double x) const {
        mpfr_t vx, acc, val, lg;
        mpfr_inits2(kEscalatedPrec, vx, acc, val, lg, nullptr);
        mpfr_set_d(vx, x, MPFR_RNDN);
        mpfr_set_d(acc, x, MPFR_RNDN);
        bool inf = false;
        for (std::size_t j = 0; j < terms.size() && !inf; ++j) {
            if (w[j] == 0.0) continue;
            const IntPoly& p = terms[j].poly;
            mpfr_set_z(val, p.leading().get_mpz_t(), MPFR_RNDN);
            for (int i = p.degree() - 1; i >= 0; --i) {
                mpfr_mul(val, val, vx, MPFR_RNDN);
                mpfr_add_z(val, val, p.coeff(i).get_mpz_t(), MPFR_RNDN);
            }
            if (mpfr_zero_p(val)) {
                inf = true;
                break;
            }
            mpfr_abs(val, val, MPFR_RNDN);
            mpfr_log(lg, val, MPFR_RNDN);
            mpfr_mul_d(lg, lg, w[j], MPFR_RNDN);
            mpfr_sub(acc, acc, lg, MPFR_RNDN);
        }
        double out = inf ? kInf : mpfr_get_d(acc, MPFR_RNDN);
        mpfr_clears(vx, acc, val, lg, nullptr);
        escalations.fetch_add(1, std::memory_order_relaxed);
        return out;
    }

    double eval_fp_mpfr(const std::vector<double>& w, double x) const {
        mpfr_t vx, acc, val, dval, q;
        mpfr_inits2(kEscalatedPrec, vx, acc, val, dval, q, nullptr);
        mpfr_set_d(vx, x, MPFR_RNDN);
        mpfr_set_d(acc, 1.0, MPFR_RNDN);
        bool sing = false;
        for (std::size_t j = 0; j < terms.size() && !sing; ++j) {
            if (w[j] == 0.0) continue;
            const IntPoly& p = terms[j].poly;
            const IntPoly& d = terms[j].deriv;
            mpfr_set_z(val, p.leading().get_mpz_t(), MPFR_RNDN);
            for (int i = p.degree() - 1; i >= 0; --i) {
                mpfr_mul(val, val, vx, MPFR_RNDN);
                mpfr_add_z(val, val, p.coeff(i).get_mpz_t(), MPFR_RNDN);
            }
            if (mpfr_zero_p(val)) {
                sing = true;
                break;
            }
            if (d.is_zero()) continue;
            mpfr_set_z(dval, d.leading().get_mpz_t(), MPFR_RNDN);
            for (int i = d.degree() - 1; i >= 0; --i) {
                mpfr_mul(dval, dval, vx, MPFR_RNDN);
                mpfr_add_z(dval, dval, d.coeff(i).get_mpz_t(), MPFR_RNDN);
            }
            mpfr_div(q, dval, val, MPFR_RNDN);
            mpfr_mul_d(q, q, w[j], MPFR_RNDN);
            mpfr_sub(acc, acc, q, MPFR_RNDN);
        }
        double out = sing ? std::nan("") : mpfr_get_d(acc, MPFR_RNDN);
        mpfr_clears(vx, acc, val, dval, q, nullptr);
        escalations.fetch_add(1, std::memory_order_relaxed);
        return out;
    }

    // ---- batch double paths with cancellation escalation -------------------

    void eval_f_batch(const std::vector<double>& w, const std::vector<double>& xs,
                      std::vector<double>& out) const {
        const std::size_t n = xs.size();
        out.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) out[i] = xs[i];
        std::vector<double> vals(n), scal(n), axs(n);
        std::vector<unsigned char> flag(n, 0);
        for (std::size_t i = 0; i < n; ++i) axs[i] = std::abs(xs[i]);
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (w[j] == 0.0) continue;
            const Term& t = terms[j];
            kernels::horner_batch(t.coeffs.data(), t.deg, xs.data(), vals.data(), n);
            kernels::horner_batch(t.abs_coeffs.data(), t.deg, axs.data(), scal.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                if (flag[i]) continue;
                double av = std::abs(vals[i]);
                if (av <= kCancelThreshold * scal[i])
                    flag[i] = 1;
                else
                    out[i] -= w[j] * std::log(av);
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (flag[i]) out[i] = eval_f_mpfr(w, xs[i]);
    }

    void eval_fp_batch(const std::vector<double>& w, const std::vector<double>& xs,
                       std::vector<double>& out) const {
        const std::size_t n = xs.size();
        out.assign(n, 1.0);
        std::vector<double> vals(n), dvals(n), scal(n), axs(n);
        std::vector<unsigned char> flag(n, 0);
        for (std::size_t i = 0; i < n; ++i) axs[i] = std::abs(xs[i]);
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (w[j] == 0.0) continue;
            const Term& t = terms[j];
            kernels::horner_batch(t.coeffs.data(), t.deg, xs.data(), vals.data(), n);
            kernels::horner_batch(t.dcoeffs.data(), std::max(t.deg - 1, 0), xs.data(),
                                  dvals.data(), n);
            kernels::horner_batch(t.abs_coeffs.data(), t.deg, axs.data(), scal.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                if (flag[i]) continue;
                double av = std::abs(vals[i]);
                if (av <= kCancelThreshold * scal[i])
                    flag[i] = 1;
                else if (t.deg >= 1)
                    out[i] -= w[j] * dvals[i] / vals[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (flag[i]) out[i] = eval_fp_mpfr(w, xs[i]);
    }

    double eval_f_one(const std::vector<double>& w, double x) const {
        std::vector<double> xs{x}, out;
        eval_f_batch(w, xs, out);
        return out[0];
    }

    double eval_fp_one(const std::vector<double>& w, double x) const {
        std::vector<double> xs{x}, out;
        eval_fp_batch(w, xs, out);
        return out[0];
    }

    // merged exclusion zones of the active terms
    std::vector<Term::Zone> active_zones(const std::vector<double>& w) const {
        std::vector<Term::Zone> zs;
        for (std::size_t j = 0; j < terms.size(); ++j)
            if (w[j] > 0.0)
                zs.insert(zs.end(), terms[j].zones.begin(), terms[j].zones.end());
        std::sort(zs.begin(), zs.end(),
                  [](const Term::Zone& a, const Term::Zone& b) { return a.lo < b.lo; });
        std::vector<Term::Zone> merged;
        for (const auto& z : zs) {
            if (!merged.empty() && z.lo <= merged.back().hi)
                merged.back().hi = std::max(merged.back().hi, z.hi);
            else
                merged.push_back(z);
        }
        return merged;
    }

    struct IntervalResult {
        std::vector<LocalMin> minima;
        double sample_min = kInf;
    };

    IntervalResult scan_interval(const std::vector<double>& w, double a, double b) const {
        IntervalResult res;
        if (!(b > a)) return res;
        std::vector<double> nodes, fp, fv;
        int prev_changes = -1;
        int stable = 0;
        std::size_t n = 64;
        while (true) {
            nodes.resize(n);
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            // Chebyshev roots: interior nodes, clustered at both ends
            for (std::size_t i = 0; i < n; ++i)
                nodes[i] = mid + half * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n));
            std::sort(nodes.begin(), nodes.end());
            eval_fp_batch(w, nodes, fp);
            int changes = 0;
            for (std::size_t i = 0; i + 1 < n; ++i)
                if (std::isfinite(fp[i]) && std::isfinite(fp[i + 1]) && fp[i] * fp[i + 1] < 0)
                    ++changes;
            if (changes == prev_changes)
                ++stable;
            else
                stable = 0;
            prev_changes = changes;
            if (stable >= 2 || n >= 65536) break;
            n *= 2;
        }
        // f samples as a safety net below the refined minima
        eval_f_batch(w, nodes, fv);
        for (double v : fv)
            if (std::isfinite(v)) res.sample_min = std::min(res.sample_min, v);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!(fp[i] < 0 && fp[i + 1] > 0)) continue;  // minimum bracket
            double lo = nodes[i], hi = nodes[i + 1];
            for (int it = 0; it < 90; ++it) {
                double midp = 0.5 * (lo + hi);
                if (hi - lo <= 1e-14 * std::max(1.0, std::abs(midp))) break;
                double s = eval_fp_one(w, midp);
                if (!std::isfinite(s)) break;
                if (s < 0)
                    lo = midp;
                else
                    hi = midp;
            }
            double xstar = 0.5 * (lo + hi);
            double val = eval_f_one(w, xstar);
            if (std::isfinite(val)) res.minima.push_back({xstar, val});
        }
        return res;
    }

    MinimizationReport minimize(const std::vector<double>& w, double tol,
                                bool allow_finite_origin) const {
        if (w.size() != terms.size())
            throw std::invalid_argument("weight count does not match the polynomial count");
        for (double v : w)
            if (!(v >= 0)) throw std::invalid_argument("weights must be nonnegative");
        if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");

        bool origin_divergent = false;
        double t_total = 0.0, lc_log = 0.0, rho = 1.0;
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (w[j] <= 0.0) continue;
            const Term& t = terms[j];
            if (t.deg >= 1 && t.poly.coeff(0) == 0) origin_divergent = true;
            t_total += w[j] * t.deg;
            lc_log += w[j] * t.log_abs_lc;
            rho = std::max(rho, t.root_bound);
        }
        if (!origin_divergent && !allow_finite_origin)
            throw MinimizationError(
                "divergent at origin: no term with a root at 0 carries positive weight");

        // analytic tail bound g(x) = x - t ln(2x) - sum w ln|lc|, valid for
        // x >= rho and increasing for x > t
        auto tail_bound = [&](double x) { return x - t_total * std::log(2.0 * x) - lc_log; };

        escalations.store(0, std::memory_order_relaxed);
        auto zones = active_zones(w);

        double A = std::max({2.0 * rho, t_total + 1.0, 10.0});
        MinimizationReport rep;
        rep.tol = tol;
        for (int pass = 0;; ++pass) {
            // sampling intervals: gaps between exclusion zones inside (0, A]
            std::vector<std::pair<double, double>> intervals;
            double cursor = 0.0;
            for (const auto& z : zones) {
                if (z.lo >= A) break;
                if (z.lo > cursor) intervals.emplace_back(cursor, std::min(z.lo, A));
                cursor = std::max(cursor, z.hi);
            }
            if (cursor < A) intervals.emplace_back(cursor, A);

            std::vector<IntervalResult> results(intervals.size());
            parallel_for(intervals.size(), [&](std::size_t i) {
                results[i] = scan_interval(w, intervals[i].first, intervals[i].second);
            });

            rep.argmins.clear();
            double m = kInf;
            for (const auto& r : results) {
                for (const auto& lm : r.minima) {
                    rep.argmins.push_back(lm);
                    m = std::min(m, lm.value);
                }
                m = std::min(m, r.sample_min);
            }
            double fA = eval_f_one(w, A);
            if (std::isfinite(fA)) m = std::min(m, fA);
            if (!origin_divergent) {
                // finite limit at 0+ participates as an infimum candidate
                double f0 = 0.0;
                bool inf0 = false;
                for (std::size_t j = 0; j < terms.size(); ++j) {
                    if (w[j] <= 0.0) continue;
                    double v = eval_float(terms[j].poly, 0.0);
                    if (v == 0.0) {
                        inf0 = true;
                        break;
                    }
                    f0 -= w[j] * std::log(std::abs(v));
                }
                if (!inf0) m = std::min(m, f0);
            }
            std::sort(rep.argmins.begin(), rep.argmins.end(),
                      [](const LocalMin& x, const LocalMin& y) { return x.x < y.x; });
            rep.m = m;
            rep.tail_cutoff = A;

            if (tail_bound(A) >= m) break;
            if (pass >= 40 || A > 1e12)
                throw MinimizationError("cutoff too small: analytic tail bound cannot certify " +
                                        std::to_string(m) + " at A=" + std::to_string(A));
            // extend A to where the tail bound clears m (g is increasing)
            double lo = A, hi = std::max(2.0 * A, t_total + 2.0);
            while (tail_bound(hi) < m && hi < 1e12) hi *= 2.0;
            for (int it = 0; it < 200; ++it) {
                double midp = 0.5 * (lo + hi);
                if (tail_bound(midp) >= m)
                    hi = midp;
                else
                    lo = midp;
            }
            A = hi * 1.0000001 + 1.0;
        }
        rep.escalations = escalations.load(std::memory_order_relaxed);
        return rep;
    }
};

AuxMinimizer::AuxMinimizer(std::vector<IntPoly> polys)
    : impl_(std::make_unique<Impl>(std::move(polys))) {}
AuxMinimizer::~AuxMinimizer() = default;
AuxMinimizer::AuxMinimizer(AuxMinimizer&&) noexcept = default;
AuxMinimizer& AuxMinimizer::operator=(AuxMinimizer&&) noexcept = default;

const std::vector<IntPoly>& AuxMinimizer::polys() const { return impl_->originals; }

MinimizationReport AuxMinimizer::minimize(const std::vector<double>& weights, double tol,
                                          bool allow_finite_origin) const {
    return impl_->minimize(weights, tol, allow_finite_origin);
}

MinimizationReport global_min(const AuxFunction& af, double tol) {
    std::vector<IntPoly> polys;
    std::vector<double> w;
    for (const auto& t : af.terms()) {
        polys.push_back(t.poly);
        w.push_back(t.weight);
    }
    return AuxMinimizer(std::move(polys)).minimize(w, tol, false);
}

std::vector<double> local_minima(const AuxFunction& af, double tol) {
    MinimizationReport rep = global_min(af, tol);
    std::vector<double> xs;
    xs.reserve(rep.argmins.size());
    for (const auto& lm : rep.argmins) xs.push_back(lm.x);
    return xs;
}

std::string MinimizationReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"m\":" << m << ",\"tail_cutoff\":" << tail_cutoff << ",\"tol\":" << tol
       << ",\"escalations\":" << escalations << ",\"argmins\":[";
    for (std::size_t i = 0; i < argmins.size(); ++i) {
        if (i) os << ',';
        os << "{\"x\":" << argmins[i].x << ",\"f\":" << argmins[i].value << "}";
    }
    os << "]}";
    return os.str();
}

RationalizedForm rationalize(const AuxFunction& af, long q) {
    if (q < 1) throw std::invalid_argument("rationalize requires q >= 1");
    RationalizedForm out;
    out.t = af.t();
    long worst_j = -1;
    double worst_err = 0.0;
    for (std::size_t j = 0; j < af.terms().size(); ++j) {
        const auto& term = af.terms()[j];
        double target = static_cast<double>(q) * term.weight;
        long a = std::llround(target);
        double err = std::abs(target - static_cast<double>(a));
        if (err > worst_err) {
            worst_err = err;
            worst_j = static_cast<long>(j);
        }
        out.factors.emplace_back(term.poly, a);
        out.r += a * term.poly.degree();
    }
    if (worst_err > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "weight " << worst_j << " (" << af.terms()[static_cast<std::size_t>(worst_j)].weight
           << ") is not representable with denominator " << q << ": q*c = "
           << static_cast<double>(q) * af.terms()[static_cast<std::size_t>(worst_j)].weight
           << " is " << worst_err << " away from an integer";
        throw std::invalid_argument(os.str());
    }
    return out;
}

IntPoly RationalizedForm::expand(long degree_cap) const {
    if (r > degree_cap)
        throw std::invalid_argument("expanded degree " + std::to_string(r) +
                                    " exceeds the cap " + std::to_string(degree_cap));
    IntPoly acc = IntPoly::constant(1);
    for (const auto& [p, a] : factors) {
        IntPoly base = p;
        long e = a;
        while (e > 0) {  // square-and-multiply
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
    }
    return acc;
}

double weighted_sup(const IntPoly& q, double t, long r, double tol) {
    return weighted_sup(std::vector<std::pair<IntPoly, long>>{{q, 1}}, t, r, tol);
}

double weighted_sup(const std::vector<std::pair<IntPoly, long>>& factors, double t, long r,
                    double tol) {
    if (factors.empty()) throw std::invalid_argument("weighted_sup needs at least one factor");
    if (!(t > 0) || r < 1) throw std::invalid_argument("weighted_sup requires t > 0 and r >= 1");
    std::vector<IntPoly> polys;
    std::vector<double> w;
    for (const auto& [p, a] : factors) {
        if (p.is_zero()) throw std::invalid_argument("weighted_sup factor is zero");
        polys.push_back(p);
        w.push_back(t * static_cast<double>(a) / static_cast<double>(r));
    }
    MinimizationReport rep = AuxMinimizer(std::move(polys)).minimize(w, tol, true);
    return std::exp(-rep.m);
}

}  // namespace traceforge
