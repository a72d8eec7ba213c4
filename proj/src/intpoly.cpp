#include "traceforge/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace traceforge {

IntPoly IntPoly::monomial(Int c, int n) {
    if (n < 0) throw std::invalid_argument("negative exponent");
    if (c == 0) return IntPoly();
    std::vector<Int> v(static_cast<std::size_t>(n) + 1, Int(0));
    v.back() = std::move(c);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> v(c_);
    for (auto& a : v) a = -a;
    return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> v(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> v(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> v(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(v));
}

IntPoly operator*(const Int& k, const IntPoly& a) {
    if (k == 0) return IntPoly();
    std::vector<Int> v(a.c_);
    for (auto& c : v) c *= k;
    return IntPoly(std::move(v));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& a = c_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        const bool neg = a < 0;
        Int mag = abs(a);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (mag != 1 || i == 0) {
            os << mag.get_str();
            if (i > 0) os << "*";
        }
        if (i >= 1) {
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

IntPoly IntPoly::parse(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty polynomial string");

    std::size_t pos = 0;
    std::vector<Int> coeffs;
    auto add = [&](const Int& c, long e) {
        if (e < 0 || e > 1000000) throw std::invalid_argument("exponent out of range");
        if (coeffs.size() <= static_cast<std::size_t>(e)) coeffs.resize(static_cast<std::size_t>(e) + 1, Int(0));
        coeffs[static_cast<std::size_t>(e)] += c;
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("expected integer at position " + std::to_string(start));
        return s.substr(start, pos - start);
    };

    bool expect_term = true;
    int sign = 1;
    while (pos < s.size()) {
        if (s[pos] == '+' || s[pos] == '-') {
            if (expect_term && pos > 0) throw std::invalid_argument("dangling sign");
            sign = (s[pos] == '-') ? -1 : 1;
            ++pos;
            expect_term = true;
            continue;
        }
        Int coef = 1;
        bool saw_coef = false;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coef = Int(read_uint());
            saw_coef = true;
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        long expo = 0;
        if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            expo = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                expo = std::stol(read_uint());
            }
        } else if (!saw_coef) {
            throw std::invalid_argument("expected term at position " + std::to_string(pos));
        }
        add(sign * coef, expo);
        sign = 1;
        expect_term = false;
    }
    if (expect_term) throw std::invalid_argument("trailing operator");
    return IntPoly(std::move(coeffs));
}

Rat eval_exact(const IntPoly& p, const Rat& x) {
    if (p.is_zero()) return Rat(0);
    const auto& c = p.coeffs();
    Rat acc(c.back());
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc *= x;
        acc += c[static_cast<std::size_t>(i)];
    }
    return acc;
}

namespace {

// TwoSum of a + b: returns rounded sum, err receives the exact residue
inline double two_sum(double a, double b, double& err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

}  // namespace

FloatEval eval_float_checked(const IntPoly& p, double x) {
    if (p.is_zero()) return {0.0, 0.0};
    const auto& c = p.coeffs();
    const int n = p.degree();

    bool coeffs_exact = true;
    auto to_d = [&](const Int& v) {
        double d = v.get_d();
        if (coeffs_exact && Int(d) != v) coeffs_exact = false;
        return d;
    };

    double s = to_d(c.back());
    double comp = 0.0;
    double abs_acc = std::abs(s);
    const double ax = std::abs(x);
    for (int i = n - 1; i >= 0; --i) {
        double prod = s * x;
        double perr = std::fma(s, x, -prod);
        double serr;
        double ci = to_d(c[static_cast<std::size_t>(i)]);
        s = two_sum(prod, ci, serr);
        comp = comp * x + (perr + serr);
        abs_acc = abs_acc * ax + std::abs(ci);
    }
    double value = s + comp;
    if (!std::isfinite(value) || !std::isfinite(abs_acc))
        throw EvalOverflow("polynomial evaluation left the double range");

    const double u = std::numeric_limits<double>::epsilon() / 2;
    const double g = 2.0 * n * u / (1.0 - 2.0 * n * u);
    double bound = u * std::abs(value) + 4.0 * g * g * abs_acc;
    if (!coeffs_exact) bound += 4.0 * u * abs_acc;  // coefficient rounding
    if (!std::isfinite(bound)) throw EvalOverflow("error bound overflow");
    return {value, bound};
}

double eval_float(const IntPoly& p, double x) { return eval_float_checked(p, x).value; }

IntPoly derivative(const IntPoly& p) {
    if (p.degree() <= 0) return IntPoly();
    std::vector<Int> v(static_cast<std::size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i)
        v[static_cast<std::size_t>(i - 1)] = Int(i) * p.coeff(i);
    return IntPoly(std::move(v));
}

Int trace(const IntPoly& p) {
    if (!p.is_monic() || p.degree() < 1)
        throw std::invalid_argument("trace requires a monic polynomial of degree >= 1");
    return -p.coeff(p.degree() - 1);
}

Rat abs_trace(const IntPoly& p) {
    Rat r(trace(p), Int(p.degree()));
    r.canonicalize();
    return r;
}

std::vector<Int> power_sums(const IntPoly& p, int K) {
    if (!p.is_monic() || p.degree() < 1)
        throw std::invalid_argument("power_sums requires a monic polynomial of degree >= 1");
    if (K < 1) throw std::invalid_argument("K must be positive");
    const int d = p.degree();
    // e_k = (-1)^k a_{d-k}, zero beyond the degree
    std::vector<Int> e(static_cast<std::size_t>(d) + 1, Int(0));
    e[0] = 1;
    for (int k = 1; k <= d; ++k) {
        e[static_cast<std::size_t>(k)] = p.coeff(d - k);
        if (k % 2 == 1) e[static_cast<std::size_t>(k)] = -e[static_cast<std::size_t>(k)];
    }
    std::vector<Int> s(static_cast<std::size_t>(K) + 1, Int(0));
    for (int k = 1; k <= K; ++k) {
        Int acc = 0;
        if (k <= d) {
            acc = e[static_cast<std::size_t>(k)] * k;
            if (k % 2 == 0) acc = -acc;
        }
        const int top = std::min(k - 1, d);
        for (int i = 1; i <= top; ++i) {
            Int term = e[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        s[static_cast<std::size_t>(k)] = acc;
    }
    return std::vector<Int>(s.begin() + 1, s.end());
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (a.is_zero()) return IntPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Int(0));
    const Int& lb = b.leading();
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
        Int& lead = rem[static_cast<std::size_t>(i + b.degree())];
        if (lead == 0) continue;
        if (!mpz_divisible_p(lead.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        Int q = lead / lb;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(i + j)] -= q * b.coeff(j);
        quot[static_cast<std::size_t>(i)] = std::move(q);
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem by zero polynomial");
    if (a.degree() < b.degree()) return a;
    IntPoly r = a;
    const Int& lb = b.leading();
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        IntPoly shifted = IntPoly::monomial(r.leading(), r.degree() - b.degree()) * b;
        r = lb * r - shifted;
        --e;
    }
    if (e > 0) {
        Int scale;
        mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        r = scale * r;
    }
    return r;
}

Int content(const IntPoly& p) {
    Int g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;  // zero polynomial has content 0
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int c = content(p);
    std::vector<Int> v(p.coeffs());
    for (auto& a : v) a /= c;
    return IntPoly(std::move(v));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return IntPoly();
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    Int cont;
    mpz_gcd(cont.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
    IntPoly u = primitive_part(a);
    IntPoly v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(u, v));
        u = std::move(v);
        v = std::move(r);
    }
    if (u.leading() < 0) u = -u;
    return cont * u;
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("square-free part of zero polynomial");
    IntPoly pp = primitive_part(p);
    if (pp.degree() == 0) return IntPoly::constant(1);
    IntPoly g = gcd(pp, derivative(pp));
    IntPoly sf = *divide_exact(pp, g);
    if (sf.leading() < 0) sf = -sf;
    return sf;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    // Yun's algorithm on the primitive part (positive leading coefficient)
    if (p.is_zero()) throw std::invalid_argument("square-free decomposition of zero polynomial");
    IntPoly f = primitive_part(p);
    if (f.leading() < 0) f = -f;
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() == 0) return out;
    IntPoly fp = derivative(f);
    IntPoly g = gcd(f, fp);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly c = *divide_exact(f, g);
    IntPoly d = *divide_exact(fp, g) - derivative(c);
    int i = 1;
    while (c.degree() > 0) {
        IntPoly part = gcd(c, d);
        if (part.degree() > 0) out.emplace_back(part, i);
        c = *divide_exact(c, part);
        d = *divide_exact(d, part) - derivative(c);
        ++i;
    }
    return out;
}

namespace {

// sign of p(num/den) for den > 0, via the homogeneous integer form
// sum a_i num^i den^(deg - i); avoids rational arithmetic entirely
int sign_at_rational(const IntPoly& p, const Int& num, const Int& den) {
    if (p.is_zero()) return 0;
    const int d = p.degree();
    Int acc = p.coeff(d);
    for (int i = d - 1; i >= 0; --i) {
        acc *= num;
        if (p.coeff(i) != 0) {
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(d - i));
            acc += p.coeff(i) * pw;
        }
    }
    return mpz_sgn(acc.get_mpz_t());
}

struct SturmChain {
    std::vector<IntPoly> s;  // s[0] square-free primitive, s[1] = s[0]'

    explicit SturmChain(const IntPoly& p) {
        IntPoly f = primitive_part(squarefree_part(p));
        s.push_back(f);
        if (f.degree() >= 1) {
            s.push_back(derivative(f));
            while (!s.back().is_zero() && s.back().degree() > 0) {
                const IntPoly& a = s[s.size() - 2];
                const IntPoly& b = s.back();
                IntPoly r = pseudo_rem(a, b);
                if (r.is_zero()) break;
                // keep the chain a positive multiple of -(a mod b)
                const int e = a.degree() - b.degree() + 1;
                const bool mult_positive = (b.leading() > 0) || (e % 2 == 0);
                if (mult_positive) r = -r;
                s.push_back(primitive_part(r));
            }
        }
    }

    static int sgn(const Int& v) { return mpz_sgn(v.get_mpz_t()); }
    static int sgn(const Rat& v) { return mpq_sgn(v.get_mpq_t()); }

    // sign sequence just right of x (or at -inf/+inf); zeros are resolved
    // so that V+ counts roots in half-open intervals (a, b]
    int variations_right(const std::optional<Rat>& x, int at_infinity) const {
        std::vector<int> signs;
        signs.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            int sg;
            if (!x) {
                const IntPoly& q = s[i];
                sg = sgn(q.leading());
                if (at_infinity < 0 && q.degree() % 2 == 1) sg = -sg;
            } else {
                sg = sign_at_rational(s[i], x->get_num(), x->get_den());
            }
            signs.push_back(sg);
        }
        if (!signs.empty() && signs[0] == 0) {
            // x is a root of the square-free part; just right of it the sign
            // matches the derivative's
            signs[0] = signs.size() > 1 ? signs[1] : 1;
        }
        int count = 0;
        int prev = 0;
        for (int sg : signs) {
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++count;
            prev = sg;
        }
        return count;
    }

    int count(const std::optional<Rat>& lo, const std::optional<Rat>& hi) const {
        if (s[0].degree() <= 0) return 0;
        return variations_right(lo, -1) - variations_right(hi, +1);
    }
};

}  // namespace

int sturm_count(const IntPoly& p, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count on zero polynomial");
    if (lo && hi && *lo >= *hi) return 0;
    SturmChain chain(p);
    return chain.count(lo, hi);
}

std::vector<RootInterval> isolate_real_roots(const IntPoly& p, const Rat& width) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots on zero polynomial");
    if (width <= 0) throw std::invalid_argument("width must be positive");

    struct Isolated {
        RootInterval ri;
        std::size_t chain_idx;
    };
    std::vector<Isolated> found;
    std::vector<SturmChain> chains;
    auto parts = squarefree_decomposition(p);
    for (const auto& [g, mult] : parts) {
        chains.emplace_back(g);
        const SturmChain& chain = chains.back();
        const std::size_t ci = chains.size() - 1;
        // Cauchy bound: every root has |z| < 1 + max|a_i| / |lc|
        Int maxc = 0;
        for (int i = 0; i < g.degree(); ++i) {
            Int a = abs(g.coeff(i));
            if (a > maxc) maxc = a;
        }
        Rat bound(maxc, abs(g.leading()));
        bound.canonicalize();
        bound += 2;
        struct Seg {
            Rat lo, hi;
            int count;
        };
        std::vector<Seg> stack;
        int total = chain.count(Rat(-bound), Rat(bound));
        if (total > 0) stack.push_back({-bound, bound, total});
        while (!stack.empty()) {
            Seg seg = stack.back();
            stack.pop_back();
            if (seg.count == 1 && seg.hi - seg.lo <= width) {
                found.push_back({{seg.lo, seg.hi, mult}, ci});
                continue;
            }
            Rat mid = (seg.lo + seg.hi) / 2;
            int left = chain.count(seg.lo, mid);
            if (left > 0) stack.push_back({seg.lo, mid, left});
            if (seg.count - left > 0) stack.push_back({mid, seg.hi, seg.count - left});
        }
    }
    auto by_lo = [](const Isolated& a, const Isolated& b) { return a.ri.lo < b.ri.lo; };
    std::sort(found.begin(), found.end(), by_lo);
    // intervals from different square-free parts may still overlap; shrink
    // each around its own root until the list is pairwise disjoint (roots of
    // distinct parts are distinct reals, so this terminates)
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < found.size(); ++i) {
            if (found[i].ri.hi <= found[i + 1].ri.lo) continue;
            changed = true;
            for (std::size_t k : {i, i + 1}) {
                RootInterval& ri = found[k].ri;
                const SturmChain& chain = chains[found[k].chain_idx];
                Rat mid = (ri.lo + ri.hi) / 2;
                if (chain.count(ri.lo, mid) > 0)
                    ri.hi = mid;
                else
                    ri.lo = mid;
            }
            std::sort(found.begin(), found.end(), by_lo);
        }
    }
    std::vector<RootInterval> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(std::move(f.ri));
    return out;
}

bool is_totally_positive(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("is_totally_positive on zero polynomial");
    int with_mult = 0;
    for (const auto& [g, mult] : squarefree_decomposition(p))
        with_mult += mult * sturm_count(g, Rat(0), std::nullopt);
    return with_mult == p.degree();
}

IntPoly to_reciprocal(const IntPoly& q) {
    if (!q.is_monic() || q.degree() < 1)
        throw std::invalid_argument("to_reciprocal requires a monic polynomial of degree >= 1");
    const int m = q.degree();
    // X^m Q(X + 1/X - 2) = sum_k q_k X^(m-k) (X-1)^(2k), since X(X+1/X-2) = (X-1)^2
    const IntPoly w = IntPoly{1, -2, 1};  // (X-1)^2
    IntPoly pow = IntPoly::constant(1);
    IntPoly acc;
    for (int k = 0; k <= m; ++k) {
        if (q.coeff(k) != 0)
            acc = acc + IntPoly::monomial(q.coeff(k), m - k) * pow;
        if (k < m) pow = pow * w;
    }
    return acc;
}

IntPoly from_reciprocal(const IntPoly& p) {
    if (!p.is_monic() || p.degree() < 2)
        throw std::invalid_argument("from_reciprocal requires a monic polynomial of degree >= 2");
    const int d = p.degree();
    if (d % 2 != 0)
        throw std::invalid_argument("from_reciprocal: odd degree " + std::to_string(d));
    for (int i = 0; i <= d / 2; ++i) {
        if (p.coeff(i) != p.coeff(d - i))
            throw std::invalid_argument("not reciprocal: coefficient " + p.coeff(i).get_str() +
                                        " of x^" + std::to_string(i) + " != coefficient " +
                                        p.coeff(d - i).get_str() + " of x^" + std::to_string(d - i));
    }
    const int m = d / 2;
    const IntPoly w = IntPoly{1, -2, 1};
    std::vector<IntPoly> basis(static_cast<std::size_t>(m) + 1);  // X^(m-k) (X-1)^(2k)
    IntPoly pow = IntPoly::constant(1);
    for (int k = 0; k <= m; ++k) {
        basis[static_cast<std::size_t>(k)] = IntPoly::monomial(1, m - k) * pow;
        if (k < m) pow = pow * w;
    }
    IntPoly rem = p;
    std::vector<Int> qc(static_cast<std::size_t>(m) + 1, Int(0));
    for (int k = m; k >= 0; --k) {
        Int c = rem.coeff(m + k);
        qc[static_cast<std::size_t>(k)] = c;
        if (c != 0) rem = rem - c * basis[static_cast<std::size_t>(k)];
    }
    if (!rem.is_zero())
        throw std::logic_error("from_reciprocal: residue after back-substitution");
    return IntPoly(std::move(qc));
}

double root_modulus_bound(const IntPoly& p) {
    if (p.is_zero() || p.degree() < 1) return 0.0;
    double lc = std::abs(p.leading().get_d());
    double maxc = 0.0;
    for (int i = 0; i < p.degree(); ++i)
        maxc = std::max(maxc, std::abs(p.coeff(i).get_d()));
    return 1.0 + (maxc / lc) * (1.0 + 1e-12) + 1e-12;
}

}  // namespace traceforge
