#include "traceforge/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace traceforge {

IntPoly Factorization::product() const {
    IntPoly acc = IntPoly::constant(unit);
    for (const auto& [f, mult] : factors)
        for (int i = 0; i < mult; ++i) acc = acc * f;
    return acc;
}

std::string Factorization::to_string() const {
    std::ostringstream os;
    os << unit.get_str();
    for (const auto& [f, mult] : factors) {
        os << " * (" << f.to_string() << ")";
        if (mult > 1) os << "^" << mult;
    }
    return os.str();
}

std::vector<std::pair<IntPoly, int>> squarefree_decompose(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("square-free decomposition of zero polynomial");
    return squarefree_decomposition(p);
}

namespace {

// ---- arithmetic modulo a small prime -------------------------------------

using SPoly = std::vector<std::int64_t>;  // little-endian, coeffs in [0, p)

void strip(SPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const SPoly& a) { return static_cast<int>(a.size()) - 1; }

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
        e >>= 1;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) { return pow_mod(a, p - 2, p); }

SPoly mul(const SPoly& a, const SPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    SPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::int64_t>(
                (static_cast<__int128>(a[i]) * b[j] + r[i + j]) % p);
    }
    strip(r);
    return r;
}

SPoly sub(const SPoly& a, const SPoly& b, std::int64_t p) {
    SPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] % p + p) % p;
    strip(r);
    return r;
}

void make_monic(SPoly& a, std::int64_t p) {
    if (a.empty() || a.back() == 1) return;
    std::int64_t iv = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::int64_t>(static_cast<__int128>(c) * iv % p);
}

SPoly rem(SPoly a, const SPoly& b, std::int64_t p) {
    std::int64_t ilb = inv_mod(b.back(), p);
    while (deg(a) >= deg(b)) {
        std::int64_t q = static_cast<std::int64_t>(static_cast<__int128>(a.back()) * ilb % p);
        const int shift = deg(a) - deg(b);
        for (int j = 0; j <= deg(b); ++j) {
            auto& t = a[static_cast<std::size_t>(j + shift)];
            t = static_cast<std::int64_t>(
                ((t - static_cast<__int128>(q) * b[static_cast<std::size_t>(j)]) % p + p) % p);
        }
        strip(a);
        if (a.empty()) break;
    }
    return a;
}

SPoly gcd_sp(SPoly a, SPoly b, std::int64_t p) {
    while (!b.empty()) {
        SPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a, p);
    return a;
}

SPoly deriv(const SPoly& a, std::int64_t p) {
    if (a.size() <= 1) return {};
    SPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = static_cast<std::int64_t>(static_cast<__int128>(a[i]) * (i % p) % p);
    strip(r);
    return r;
}

// extended Euclid: s*a + t*b = 1 mod p (a, b coprime mod p)
void bezout_sp(const SPoly& a, const SPoly& b, std::int64_t p, SPoly& s, SPoly& t) {
    SPoly r0 = a, r1 = b;
    SPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        SPoly q;
        SPoly r = r0;
        std::int64_t ilb = inv_mod(r1.back(), p);
        q.assign(r.size(), 0);
        while (deg(r) >= deg(r1)) {
            std::int64_t qc = static_cast<std::int64_t>(static_cast<__int128>(r.back()) * ilb % p);
            int shift = deg(r) - deg(r1);
            q[static_cast<std::size_t>(shift)] = qc;
            for (int j = 0; j <= deg(r1); ++j) {
                auto& tv = r[static_cast<std::size_t>(j + shift)];
                tv = static_cast<std::int64_t>(
                    ((tv - static_cast<__int128>(qc) * r1[static_cast<std::size_t>(j)]) % p + p) % p);
            }
            strip(r);
            if (r.empty()) break;
        }
        strip(q);
        SPoly s2 = sub(s0, mul(q, s1, p), p);
        SPoly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd (a unit); scale to 1
    if (deg(r0) != 0) throw std::logic_error("bezout: inputs not coprime");
    std::int64_t iv = inv_mod(r0[0], p);
    for (auto& c : s0) c = static_cast<std::int64_t>(static_cast<__int128>(c) * iv % p);
    for (auto& c : t0) c = static_cast<std::int64_t>(static_cast<__int128>(c) * iv % p);
    s = std::move(s0);
    t = std::move(t0);
}

// ---- Berlekamp factorization of a monic square-free polynomial mod p -----

std::vector<SPoly> berlekamp(const SPoly& f, std::int64_t p) {
    const int n = deg(f);
    if (n == 1) return {f};
    // rows of Q: x^(p*i) mod f
    SPoly xp{0, 1};
    {  // x^p mod f
        SPoly base{0, 1};
        SPoly acc{1};
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1) acc = rem(mul(acc, base, p), f, p);
            base = rem(mul(base, base, p), f, p);
            e >>= 1;
        }
        xp = std::move(acc);
    }
    std::vector<SPoly> rows(static_cast<std::size_t>(n));
    rows[0] = SPoly{1};
    for (int i = 1; i < n; ++i) rows[static_cast<std::size_t>(i)] = rem(mul(rows[static_cast<std::size_t>(i - 1)], xp, p), f, p);

    // M = (Q - I)^T
    std::vector<std::vector<std::int64_t>> M(static_cast<std::size_t>(n),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t v = j <= deg(rows[static_cast<std::size_t>(i)])
                                 ? rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                 : 0;
            if (i == j) v = (v - 1 % p + p) % p;
            M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }

    // nullspace basis via Gaussian elimination
    std::vector<int> pivot_col(static_cast<std::size_t>(n), -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int row = rank; row < n; ++row)
            if (M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[static_cast<std::size_t>(sel)], M[static_cast<std::size_t>(rank)]);
        std::int64_t iv = inv_mod(M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], p);
        for (int j = 0; j < n; ++j)
            M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] = static_cast<std::int64_t>(
                static_cast<__int128>(M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) * iv % p);
        for (int row = 0; row < n; ++row) {
            if (row == rank) continue;
            std::int64_t c = M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) {
                auto& t = M[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
                t = static_cast<std::int64_t>(
                    ((t - static_cast<__int128>(c) *
                              M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]) %
                         p +
                     p) %
                    p);
            }
        }
        pivot_col[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }
    std::vector<SPoly> kernel;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int i = 0; i < rank; ++i)
        is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = true;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        SPoly v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(free_col)] = 1;
        for (int i = 0; i < rank; ++i) {
            std::int64_t c = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(free_col)];
            if (c != 0)
                v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = (p - c) % p;
        }
        strip(v);
        kernel.push_back(std::move(v));
    }

    const std::size_t r = kernel.size();  // number of irreducible factors
    std::vector<SPoly> factors{f};
    for (const SPoly& v : kernel) {
        if (factors.size() == r) break;
        if (deg(v) < 1) continue;  // constant kernel vector splits nothing
        std::vector<SPoly> next;
        for (SPoly& u : factors) {
            if (deg(u) == 1) {
                next.push_back(std::move(u));
                continue;
            }
            SPoly current = std::move(u);
            for (std::int64_t s = 0; s < p && deg(current) > 0; ++s) {
                SPoly shifted = v;
                if (shifted.empty()) shifted.assign(1, 0);
                shifted[0] = (shifted[0] - s % p + p) % p;
                strip(shifted);
                if (shifted.empty()) continue;
                SPoly g = gcd_sp(current, shifted, p);
                if (deg(g) > 0 && deg(g) < deg(current)) {
                    next.push_back(g);
                    // current /= g
                    SPoly q;
                    {
                        SPoly rr = current;
                        q.assign(rr.size(), 0);
                        while (deg(rr) >= deg(g)) {
                            std::int64_t qc = rr.back();  // g monic
                            int shift2 = deg(rr) - deg(g);
                            q[static_cast<std::size_t>(shift2)] = qc;
                            for (int j = 0; j <= deg(g); ++j) {
                                auto& tv = rr[static_cast<std::size_t>(j + shift2)];
                                tv = static_cast<std::int64_t>(
                                    ((tv - static_cast<__int128>(qc) * g[static_cast<std::size_t>(j)]) % p + p) % p);
                            }
                            strip(rr);
                            if (rr.empty()) break;
                        }
                        strip(q);
                    }
                    current = std::move(q);
                }
            }
            next.push_back(std::move(current));
        }
        factors = std::move(next);
    }
    for (auto& g : factors) make_monic(g, p);
    return factors;
}

// ---- Hensel lifting --------------------------------------------------------

IntPoly reduce_mod(const IntPoly& a, const Int& m) {
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    return IntPoly(std::move(c));
}

// division by a monic divisor with all arithmetic mod m
void divmod_monic_mod(const IntPoly& a, const IntPoly& h, const Int& m, IntPoly& q, IntPoly& r) {
    if (!h.is_monic()) throw std::logic_error("divmod_monic_mod: divisor not monic");
    std::vector<Int> rem(a.coeffs());
    int dr = a.degree();
    const int dh = h.degree();
    std::vector<Int> quot(dr >= dh ? static_cast<std::size_t>(dr - dh) + 1 : 0, Int(0));
    while (dr >= dh) {
        Int c = rem[static_cast<std::size_t>(dr)];
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c != 0) {
            quot[static_cast<std::size_t>(dr - dh)] = c;
            for (int j = 0; j <= dh; ++j) {
                Int& t = rem[static_cast<std::size_t>(dr - dh + j)];
                t -= c * h.coeff(j);
                mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            }
        } else {
            rem[static_cast<std::size_t>(dr)] = 0;
        }
        --dr;
    }
    for (auto& v : rem) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    q = IntPoly(std::move(quot));
    r = IntPoly(std::move(rem));
}

struct HenselNode {
    IntPoly poly;   // product of the leaf factors below, mod current modulus
    IntPoly s, t;   // s*left.poly + t*right.poly = 1 mod current modulus
    int left = -1, right = -1;
};

// one quadratic step: lifts the factorization of target below node from
// correctness mod m to correctness mod m*m
void hensel_step(std::vector<HenselNode>& tree, int node, const IntPoly& target, const Int& m) {
    HenselNode& nd = tree[static_cast<std::size_t>(node)];
    if (nd.left < 0) {
        nd.poly = reduce_mod(target, m * m);
        return;
    }
    const Int m2 = m * m;
    IntPoly g = tree[static_cast<std::size_t>(nd.left)].poly;
    IntPoly h = tree[static_cast<std::size_t>(nd.right)].poly;
    IntPoly s = nd.s, t = nd.t;

    IntPoly e = reduce_mod(target - g * h, m2);
    IntPoly q, r;
    divmod_monic_mod(s * e, h, m2, q, r);
    IntPoly g1 = reduce_mod(g + t * e + q * g, m2);
    IntPoly h1 = reduce_mod(h + r, m2);

    IntPoly b = reduce_mod(s * g1 + t * h1 - IntPoly::constant(1), m2);
    IntPoly c, d;
    divmod_monic_mod(s * b, h1, m2, c, d);
    IntPoly s1 = reduce_mod(s - d, m2);
    IntPoly t1 = reduce_mod(t - t * b - c * g1, m2);

    nd.s = std::move(s1);
    nd.t = std::move(t1);
    hensel_step(tree, nd.left, g1, m);
    hensel_step(tree, nd.right, h1, m);
    tree[static_cast<std::size_t>(nd.left)].poly = std::move(g1);
    tree[static_cast<std::size_t>(nd.right)].poly = std::move(h1);
}

IntPoly sp_to_intpoly(const SPoly& a) {
    std::vector<Int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    return IntPoly(std::move(c));
}

// builds the balanced product tree over leaves [lo, hi); returns node index
int build_tree(std::vector<HenselNode>& tree, const std::vector<SPoly>& leaves, int lo, int hi,
               std::int64_t p) {
    tree.push_back({});
    int idx = static_cast<int>(tree.size()) - 1;
    if (hi - lo == 1) {
        tree[static_cast<std::size_t>(idx)].poly = sp_to_intpoly(leaves[static_cast<std::size_t>(lo)]);
        return idx;
    }
    int mid = (lo + hi) / 2;
    int l = build_tree(tree, leaves, lo, mid, p);
    int r = build_tree(tree, leaves, mid, hi, p);
    // product and Bezout of the two children mod p
    SPoly gl, gr;
    auto collect = [&](int n, auto&& rec) -> SPoly {
        const HenselNode& nd = tree[static_cast<std::size_t>(n)];
        SPoly out(static_cast<std::size_t>(nd.poly.degree()) + 1);
        for (int i = 0; i <= nd.poly.degree(); ++i) out[static_cast<std::size_t>(i)] = nd.poly.coeff(i).get_si();
        (void)rec;
        return out;
    };
    gl = collect(l, collect);
    gr = collect(r, collect);
    SPoly s, t;
    bezout_sp(gl, gr, p, s, t);
    HenselNode& nd = tree[static_cast<std::size_t>(idx)];
    nd.left = l;
    nd.right = r;
    nd.poly = sp_to_intpoly(mul(gl, gr, p));
    nd.s = sp_to_intpoly(s);
    nd.t = sp_to_intpoly(t);
    return idx;
}

// symmetric representative mod m of each coefficient
IntPoly symmetric(const IntPoly& a, const Int& m) {
    const Int half = m / 2;
    std::vector<Int> c(a.coeffs());
    for (auto& v : c) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        if (v > half) v -= m;
    }
    return IntPoly(std::move(c));
}

bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---- Zassenhaus for a primitive square-free monic polynomial --------------

std::vector<IntPoly> zassenhaus_monic(const IntPoly& f) {
    const int n = f.degree();
    if (n == 1) return {f};

    // smallest usable prime >= 3: keeps f square-free mod p
    std::int64_t p = 0;
    SPoly fp;
    for (std::int64_t cand = 3;; ++cand) {
        if (!is_prime_small(cand)) continue;
        SPoly fc(static_cast<std::size_t>(n) + 1);
        bool ok = true;
        for (int i = 0; i <= n; ++i) {
            Int c = f.coeff(i);
            mpz_mod(c.get_mpz_t(), c.get_mpz_t(), Int(cand).get_mpz_t());
            fc[static_cast<std::size_t>(i)] = c.get_si();
        }
        strip(fc);
        if (deg(fc) != n) ok = false;  // cannot happen for monic f
        if (ok) {
            SPoly g = gcd_sp(fc, deriv(fc, cand), cand);
            ok = deg(g) == 0;
        }
        if (ok) {
            p = cand;
            fp = std::move(fc);
            break;
        }
        if (cand > 10000) throw std::logic_error("no usable prime found");
    }

    std::vector<SPoly> mod_factors = berlekamp(fp, p);
    std::sort(mod_factors.begin(), mod_factors.end());
    if (mod_factors.size() == 1) return {f};

    // Landau-Mignotte: factor coefficients bounded by 2^n * ||f||_2
    Int norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    Int B;
    mpz_sqrt(B.get_mpz_t(), norm2.get_mpz_t());
    B += 1;
    B <<= static_cast<unsigned>(n);
    const Int target = 2 * B + 1;

    std::vector<HenselNode> tree;
    int root = build_tree(tree, mod_factors, 0, static_cast<int>(mod_factors.size()), p);
    Int m = p;
    while (m < target) {
        hensel_step(tree, root, f, m);
        m *= m;
    }
    // collect lifted leaves
    std::vector<IntPoly> lifted;
    for (const auto& nd : tree)
        if (nd.left < 0) lifted.push_back(nd.poly);
    std::sort(lifted.begin(), lifted.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = 0; i <= a.degree(); ++i)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });

    // subset recombination with trailing-coefficient pruning
    std::vector<IntPoly> out;
    IntPoly remaining = f;
    bool restart = true;
    while (restart) {
        restart = false;
        const int pool = static_cast<int>(lifted.size());
        if (pool == 0) break;
        for (int size = 1; size <= pool / 2 && !restart; ++size) {
            std::vector<int> idx(static_cast<std::size_t>(size));
            for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
            while (true) {
                // trailing-coefficient divisibility prune
                Int tc = 1;
                for (int i : idx) tc *= lifted[static_cast<std::size_t>(i)].coeff(0);
                tc = symmetric(IntPoly::constant(tc), m).coeff(0);
                bool plausible =
                    tc != 0 && mpz_divisible_p(remaining.coeff(0).get_mpz_t(), tc.get_mpz_t());
                if (plausible) {
                    IntPoly prod = IntPoly::constant(1);
                    for (int i : idx) prod = reduce_mod(prod * lifted[static_cast<std::size_t>(i)], m);
                    IntPoly cand = symmetric(prod, m);
                    if (auto quot = divide_exact(remaining, cand)) {
                        out.push_back(cand);
                        remaining = *quot;
                        std::vector<IntPoly> rest;
                        for (int i = 0; i < pool; ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                                rest.push_back(lifted[static_cast<std::size_t>(i)]);
                        lifted = std::move(rest);
                        restart = true;
                        break;
                    }
                }
                // next combination
                int i = size - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == pool - size + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < size; ++j)
                    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    if (remaining.degree() >= 1) out.push_back(remaining);
    return out;
}

// non-monic square-free primitive input: factor the monicized polynomial
// b^(n-1) f(x/b) and map factors back through x -> b x
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
    const Int b = f.leading();
    if (b == 1) return zassenhaus_monic(f);
    const int n = f.degree();
    std::vector<Int> c(static_cast<std::size_t>(n) + 1);
    Int scale = 1;
    for (int i = n; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = f.coeff(i) * scale;
        if (i > 0) scale *= b;
    }
    IntPoly monicized = primitive_part(IntPoly(std::move(c)));
    std::vector<IntPoly> raw = zassenhaus_monic(monicized);
    std::vector<IntPoly> out;
    out.reserve(raw.size());
    for (const IntPoly& g : raw) {
        std::vector<Int> gc(static_cast<std::size_t>(g.degree()) + 1);
        Int pw = 1;
        for (int i = 0; i <= g.degree(); ++i) {
            gc[static_cast<std::size_t>(i)] = g.coeff(i) * pw;
            pw *= b;
        }
        IntPoly mapped = primitive_part(IntPoly(std::move(gc)));
        if (mapped.leading() < 0) mapped = -mapped;
        out.push_back(std::move(mapped));
    }
    return out;
}

}  // namespace

Factorization factor(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
    Factorization out;
    out.unit = content(p);
    if (p.leading() < 0) out.unit = -out.unit;
    if (p.degree() == 0) return out;

    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        IntPoly g = part;
        // x divides at most once per square-free part
        if (g.coeff(0) == 0) {
            out.factors.emplace_back(IntPoly::x(), mult);
            g = *divide_exact(g, IntPoly::x());
        }
        if (g.degree() >= 1)
            for (IntPoly& irr : zassenhaus(g)) out.factors.emplace_back(std::move(irr), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = 0; i <= a.first.degree(); ++i)
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        return a.second < b.second;
    });
    return out;
}

bool is_irreducible(const IntPoly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw std::invalid_argument("is_irreducible requires degree >= 1");
    Factorization f = factor(p);
    return f.factors.size() == 1 && f.factors[0].second == 1 && abs(f.unit) == 1;
}

}  // namespace traceforge
