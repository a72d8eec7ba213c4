#ifndef TRACEFORGE_INTPOLY_HPP
#define TRACEFORGE_INTPOLY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace traceforge {

using Int = mpz_class;
using Rat = mpq_class;

// Univariate polynomial with arbitrary-precision integer coefficients.
// Coefficients are stored little-endian: coeffs()[i] is the coefficient of
// x^i. The zero polynomial is the empty coefficient vector; otherwise the
// leading coefficient is nonzero. Values are immutable after construction.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(Int c) {
        std::vector<Int> v;
        v.push_back(std::move(c));
        return IntPoly(std::move(v));
    }
    static IntPoly x() { return IntPoly{0, 1}; }
    // x^n with integer coefficient c
    static IntPoly monomial(Int c, int n);

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    // coefficient of x^i, zero outside the stored range
    const Int& coeff(int i) const {
        static const Int kZero = 0;
        if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(i)];
    }
    const Int& leading() const {
        if (is_zero()) throw std::invalid_argument("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    bool operator==(const IntPoly&) const = default;

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const Int& k, const IntPoly& a);

    // Human-readable descending-power rendering, e.g. "x^2 - 3*x + 1".
    std::string to_string() const;
    // Parses the same grammar. Whitespace-insensitive; the '*' between a
    // coefficient and the variable is optional, as are coefficient 1 and
    // exponent 1. Throws std::invalid_argument on malformed input.
    static IntPoly parse(std::string_view text);

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// Isolating interval for one distinct real root: lo < hi, exactly one root
// of the query polynomial inside, multiplicity from the square-free
// decomposition. Lists returned by isolate_real_roots are disjoint and
// sorted by lo.
struct RootInterval {
    Rat lo;
    Rat hi;
    int multiplicity = 1;
};

// thrown by eval_float when the value leaves the double range
class EvalOverflow : public std::range_error {
public:
    using std::range_error::range_error;
};

struct FloatEval {
    double value = 0.0;
    // bound on |value - p(x)|; validated against eval_exact in the tests
    double error_bound = 0.0;
};

Rat eval_exact(const IntPoly& p, const Rat& x);

// Compensated Horner evaluation with a running absolute error bound.
// Throws EvalOverflow if the value or the bound leaves the finite range.
FloatEval eval_float_checked(const IntPoly& p, double x);
double eval_float(const IntPoly& p, double x);

IntPoly derivative(const IntPoly& p);

// trace = negated coefficient of x^(deg-1); requires monic, degree >= 1
Int trace(const IntPoly& p);
Rat abs_trace(const IntPoly& p);

// power sums S_1..S_K of the roots via Newton's identities (monic p)
std::vector<Int> power_sums(const IntPoly& p, int K);

// exact arithmetic plumbing
struct DivRem {
    IntPoly quot;
    IntPoly rem;
};
// division in Q[x] restricted to the cases used here: b's leading
// coefficient must divide exactly at every step, otherwise nullopt
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
// pseudo-remainder: prem(a,b) = lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);
Int content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
IntPoly gcd(const IntPoly& a, const IntPoly& b);
IntPoly squarefree_part(const IntPoly& p);
// Yun decomposition of the primitive part: pairwise-coprime square-free
// parts with multiplicities, product reproducing p up to content and sign
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// number of distinct real roots in (lo, hi]; unset bounds mean -inf / +inf
int sturm_count(const IntPoly& p, const std::optional<Rat>& lo, const std::optional<Rat>& hi);

std::vector<RootInterval> isolate_real_roots(const IntPoly& p, const Rat& width);

// all conjugates real and strictly positive, counted with multiplicity
bool is_totally_positive(const IntPoly& p);

// P(X) = X^m Q(X + 1/X - 2) for monic q of degree m; P is monic,
// reciprocal, of degree 2m
IntPoly to_reciprocal(const IntPoly& q);
// inverse of to_reciprocal; rejects non-reciprocal or odd-degree input
// with a diagnostic naming the violated symmetry index
IntPoly from_reciprocal(const IntPoly& p);

// upper bound on the modulus of every complex root (Cauchy bound)
double root_modulus_bound(const IntPoly& p);

}  // namespace traceforge

#endif
