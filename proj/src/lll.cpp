#include "traceforge/lll.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace traceforge {

std::string LatticeBasis::to_text() const {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ' ';
            os << row[i].get_str();
        }
        os << '\n';
    }
    return os.str();
}

namespace {

Rat dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return Rat(acc);
}

// nearest integer, halves away from zero
Int round_rat(const Rat& q) {
    Int num = q.get_num(), den = q.get_den();
    Int twice = 2 * num + (num >= 0 ? den : -den);
    Int r;
    mpz_tdiv_q(r.get_mpz_t(), twice.get_mpz_t(), Int(2 * den).get_mpz_t());
    return r;
}

}  // namespace

LatticeBasis lll_reduce(const LatticeBasis& basis) {
    if (basis.delta <= Rat(1, 4) || basis.delta >= 1)
        throw LatticeError("delta must lie in (1/4, 1)");
    const int n = static_cast<int>(basis.rows.size());
    if (n == 0) return basis;
    const std::size_t cols = basis.rows[0].size();
    for (const auto& row : basis.rows)
        if (row.size() != cols) throw LatticeError("ragged basis rows");

    std::vector<std::vector<Int>> b = basis.rows;
    std::vector<std::vector<Rat>> mu(static_cast<std::size_t>(n),
                                     std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    std::vector<Rat> B(static_cast<std::size_t>(n), Rat(0));

    auto compute_gso_row = [&](int k) {
        for (int j = 0; j < k; ++j) {
            Rat m = dot(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(j)]);
            for (int i = 0; i < j; ++i)
                m -= mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                     mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                     B[static_cast<std::size_t>(i)];
            m /= B[static_cast<std::size_t>(j)];
            mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = m;
        }
        Rat norm = dot(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]);
        for (int j = 0; j < k; ++j)
            norm -= mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                    mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                    B[static_cast<std::size_t>(j)];
        B[static_cast<std::size_t>(k)] = norm;
        if (norm == 0) throw LatticeError("dependent rows");
    };

    auto reduce_against = [&](int k, int l) {
        Rat& m = mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        if (2 * abs(m) <= 1) return;
        Int q = round_rat(m);
        for (std::size_t c = 0; c < cols; ++c)
            b[static_cast<std::size_t>(k)][c] -= q * b[static_cast<std::size_t>(l)][c];
        for (int i = 0; i < l; ++i)
            mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] -=
                Rat(q) * mu[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
        m -= q;
    };

    compute_gso_row(0);
    int k = 1;
    int kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            compute_gso_row(k);
        }
        while (true) {
            reduce_against(k, k - 1);
            const Rat& mkk = mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)];
            if (B[static_cast<std::size_t>(k)] <
                (basis.delta - mkk * mkk) * B[static_cast<std::size_t>(k - 1)]) {
                // swap rows k-1 and k, patching the GSO bookkeeping
                Rat m_old = mkk;
                Rat B_new = B[static_cast<std::size_t>(k)] + m_old * m_old * B[static_cast<std::size_t>(k - 1)];
                mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] =
                    m_old * B[static_cast<std::size_t>(k - 1)] / B_new;
                B[static_cast<std::size_t>(k)] =
                    B[static_cast<std::size_t>(k - 1)] * B[static_cast<std::size_t>(k)] / B_new;
                B[static_cast<std::size_t>(k - 1)] = B_new;
                std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k - 1)]);
                for (int j = 0; j <= k - 2; ++j)
                    std::swap(mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)],
                              mu[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)]);
                for (int i = k + 1; i <= kmax; ++i) {
                    Rat t = mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] - m_old * t;
                    mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)] =
                        t + mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] *
                                mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                }
                k = std::max(1, k - 1);
            } else {
                for (int l = k - 2; l >= 0; --l) reduce_against(k, l);
                ++k;
                break;
            }
        }
    }
    return LatticeBasis{std::move(b), basis.delta};
}

namespace {

std::vector<double> real_roots_approx(const IntPoly& q) {
    std::vector<double> roots;
    if (q.degree() < 1) return roots;
    for (const auto& iv : isolate_real_roots(q, Rat(1, 1 << 30)))
        roots.push_back((iv.lo.get_d() + iv.hi.get_d()) / 2);
    return roots;
}

// round(S * Q(x) * x^l * exp(-x * coef)) computed in MPFR at a precision
// that makes the integer rounding reliable
Int round_form_value(const IntPoly& q, double x, int l, double coef, const Int& scale) {
    mpfr_prec_t prec = 128;
    for (int attempt = 0; attempt < 3; ++attempt) {
        mpfr_t vx, acc, tmp;
        mpfr_init2(vx, prec);
        mpfr_init2(acc, prec);
        mpfr_init2(tmp, prec);
        mpfr_set_d(vx, x, MPFR_RNDN);
        // Horner for Q(x)
        mpfr_set_z(acc, q.is_zero() ? Int(0).get_mpz_t() : q.leading().get_mpz_t(), MPFR_RNDN);
        for (int i = q.degree() - 1; i >= 0; --i) {
            mpfr_mul(acc, acc, vx, MPFR_RNDN);
            mpfr_add_z(acc, acc, q.coeff(i).get_mpz_t(), MPFR_RNDN);
        }
        if (l > 0) {
            mpfr_pow_ui(tmp, vx, static_cast<unsigned long>(l), MPFR_RNDN);
            mpfr_mul(acc, acc, tmp, MPFR_RNDN);
        }
        mpfr_set_d(tmp, -coef * x, MPFR_RNDN);
        mpfr_exp(tmp, tmp, MPFR_RNDN);
        mpfr_mul(acc, acc, tmp, MPFR_RNDN);
        mpfr_mul_z(acc, acc, scale.get_mpz_t(), MPFR_RNDN);

        const bool zero = mpfr_zero_p(acc);
        const mpfr_exp_t mag = zero ? 0 : mpfr_get_exp(acc);
        if (!zero && mag + 64 > prec && attempt < 2) {
            prec = mag + 96;
            mpfr_clears(vx, acc, tmp, nullptr);
            continue;
        }
        Int out;
        mpfr_get_z(out.get_mpz_t(), acc, MPFR_RNDN);
        mpfr_clears(vx, acc, tmp, nullptr);
        return out;
    }
    throw LatticeError("form value rounding failed");
}

}  // namespace

std::vector<double> filter_control_points(const std::vector<double>& points, const IntPoly& q,
                                          double eps_root) {
    std::vector<double> roots = real_roots_approx(q);
    std::vector<double> kept;
    kept.reserve(points.size());
    for (double x : points) {
        bool near = false;
        for (double r : roots)
            if (std::abs(x - r) < eps_root) {
                near = true;
                break;
            }
        if (!near) kept.push_back(x);
    }
    return kept;
}

LatticeBasis build_search_lattice(const SearchLatticeSpec& spec) {
    if (spec.k < 0) throw LatticeError("candidate degree must be nonnegative");
    if (spec.t <= 0) throw LatticeError("weight total t must be positive");
    if (spec.scale < 1) throw LatticeError("scale must be positive");
    if (spec.control_points.empty()) throw LatticeError("no control points");
    for (double x : spec.control_points)
        if (!(x > 0)) throw LatticeError("control points must be positive");

    const std::vector<double> roots = real_roots_approx(spec.base_poly);
    for (double x : spec.control_points)
        for (double r : roots)
            if (std::abs(x - r) < spec.eps_root)
                throw LatticeError("control point " + std::to_string(x) +
                                   " too close to a root of the base polynomial");

    const int k = spec.k;
    const std::size_t npts = spec.control_points.size();
    const double coef = static_cast<double>(spec.r + k) / spec.t;
    const IntPoly q = spec.base_poly.is_zero() ? IntPoly::constant(1) : spec.base_poly;

    LatticeBasis out;
    out.rows.assign(static_cast<std::size_t>(k) + 1,
                    std::vector<Int>(static_cast<std::size_t>(k) + 1 + npts, Int(0)));
    for (int l = 0; l <= k; ++l) {
        auto& row = out.rows[static_cast<std::size_t>(l)];
        row[static_cast<std::size_t>(l)] = 1;  // identity block, weight 1
        for (std::size_t i = 0; i < npts; ++i)
            row[static_cast<std::size_t>(k) + 1 + i] =
                round_form_value(q, spec.control_points[i], l, coef, spec.scale);
    }
    for (std::size_t i = 0; i < npts; ++i) {
        bool all_zero = true;
        for (int l = 0; l <= k && all_zero; ++l)
            all_zero = out.rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(k) + 1 + i] == 0;
        if (all_zero)
            throw LatticeError("degenerate all-zero value column at control point " +
                               std::to_string(spec.control_points[i]));
    }
    return out;
}

std::vector<IntPoly> extract_candidates(const LatticeBasis& reduced, const SearchLatticeSpec& spec,
                                        int n_vectors) {
    const int k = spec.k;
    std::vector<std::size_t> order(reduced.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<Int> norms(reduced.rows.size(), Int(0));
    for (std::size_t i = 0; i < reduced.rows.size(); ++i)
        for (const Int& v : reduced.rows[i]) norms[i] += v * v;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (norms[a] != norms[b]) return norms[a] < norms[b];
        return reduced.rows[a] < reduced.rows[b];
    });

    std::vector<IntPoly> out;
    for (std::size_t oi = 0; oi < order.size() && oi < static_cast<std::size_t>(n_vectors); ++oi) {
        const auto& row = reduced.rows[order[oi]];
        if (row.size() < static_cast<std::size_t>(k) + 1) continue;
        std::vector<Int> coeffs(row.begin(), row.begin() + k + 1);
        IntPoly cand{std::move(coeffs)};
        if (cand.is_zero()) continue;
        cand = primitive_part(cand);
        if (cand.leading() < 0) cand = -cand;
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace traceforge
