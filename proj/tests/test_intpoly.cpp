#include "traceforge/intpoly.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace traceforge;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

// sign-scan oracle: counts distinct real roots of p by scanning the sign of
// the square-free part on a fine grid and confirming each bracket by
// bisection; independent of the Sturm machinery
int sign_scan_root_count(const IntPoly& p) {
    IntPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return 0;
    double bound = root_modulus_bound(sf) + 1.0;
    const int steps = 400000;
    double prev_x = -bound;
    double prev_v = eval_float(sf, prev_x);
    int count = prev_v == 0.0 ? 1 : 0;
    for (int i = 1; i <= steps; ++i) {
        double x = -bound + 2.0 * bound * i / steps;
        double v = eval_float(sf, x);
        if (v == 0.0) {
            ++count;
        } else if (prev_v != 0.0 && ((prev_v < 0) != (v < 0))) {
            // confirm by bisection
            double lo = prev_x, hi = x, flo = prev_v;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = eval_float(sf, mid);
                if (fm == 0.0) break;
                if ((flo < 0) != (fm < 0))
                    hi = mid;
                else
                    lo = mid, flo = fm;
            }
            ++count;
        }
        prev_x = x;
        prev_v = v;
    }
    return count;
}

IntPoly random_monic(std::mt19937_64& rng, int deg, int coeff_range) {
    std::uniform_int_distribution<int> dist(-coeff_range, coeff_range);
    std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = dist(rng);
    c[static_cast<std::size_t>(deg)] = 1;
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("parse and render round-trip") {
    CHECK(P("x^2 - 3*x + 1").to_string() == "x^2 - 3*x + 1");
    CHECK(P("x^2-3x+1") == P("x ^ 2 - 3 * x + 1"));
    CHECK(P("-x + 7") == IntPoly{7, -1});
    CHECK(P("5") == IntPoly::constant(5));
    CHECK(P("y^2 - 3y + 1") == P("x^2 - 3*x + 1"));
    CHECK(P("0").is_zero());
    CHECK_THROWS_AS(P("x^2 +"), std::invalid_argument);
    CHECK_THROWS_AS(P("2**x"), std::invalid_argument);
    CHECK_THROWS_AS(P(""), std::invalid_argument);
}

TEST_CASE("eval_exact") {
    CHECK(eval_exact(P("x^2 - 3*x + 1"), Rat(0)) == Rat(1));
    CHECK(eval_exact(P("x^2 - 3*x + 1"), Rat(1)) == Rat(-1));
    // direct rational arithmetic oracle: 1/8 - 5/4 + 3 - 1
    Rat expect = Rat(1, 8) - Rat(5, 4) + 3 - 1;
    CHECK(eval_exact(P("x^3 - 5*x^2 + 6*x - 1"), Rat(1, 2)) == expect);
    CHECK(expect == Rat(7, 8));
}

TEST_CASE("eval_float basics") {
    CHECK(eval_float(P("x"), 2.5) == 2.5);
    CHECK(eval_float(P("x^2 - 3*x + 1"), 3.0) == 1.0);
    CHECK_THROWS_AS(eval_float(P("x^8 + 1"), 1e100), EvalOverflow);
}

TEST_CASE("eval_float error bound vs eval_exact") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> xs(-8.0, 8.0);
    std::uniform_int_distribution<int> degd(0, 12);
    for (int iter = 0; iter < 10000; ++iter) {
        IntPoly p = random_monic(rng, degd(rng) + 1, 1000);
        double x = xs(rng);
        auto [value, bound] = eval_float_checked(p, x);
        // compare against exact evaluation at the same (representable) point
        Rat exact = eval_exact(p, Rat(x));
        double err = std::abs(Rat(Rat(value) - exact).get_d());
        CHECK(err <= bound + 1e-300);
    }
}

TEST_CASE("derivative") {
    CHECK(derivative(P("x^2 - 3*x + 1")) == P("2*x - 3"));
    CHECK(derivative(P("7")).is_zero());
    CHECK(derivative(P("x^3 - 5*x^2 + 6*x - 1")) == P("3*x^2 - 10*x + 6"));
}

TEST_CASE("trace and abs_trace") {
    CHECK(trace(P("x^2 - 3*x + 1")) == 3);
    CHECK(abs_trace(P("x^2 - 3*x + 1")) == Rat(3, 2));
    CHECK(trace(P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1")) == 7);
    CHECK(abs_trace(P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1")) == Rat(7, 4));
    CHECK(trace(P("x")) == 0);
    CHECK(abs_trace(P("x")) == 0);
    CHECK_THROWS_AS(trace(P("2*x + 1")), std::invalid_argument);
    CHECK_THROWS_AS(trace(P("5")), std::invalid_argument);
}

TEST_CASE("power sums via Newton identities") {
    // s2 = e1*s1 - 2*e2 = 9 - 2
    auto s = power_sums(P("x^2 - 3*x + 1"), 2);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == 3);
    CHECK(s[1] == 7);

    auto ones = power_sums(P("x - 1"), 3);
    CHECK(ones == std::vector<Int>{1, 1, 1});

    CHECK(power_sums(P("x^2 - 3*x + 1"), 1)[0] == trace(P("x^2 - 3*x + 1")));
}

TEST_CASE("power_sums[0] equals trace on random monic polynomials") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        IntPoly p = random_monic(rng, 1 + static_cast<int>(rng() % 8), 50);
        CHECK(power_sums(p, 4)[0] == trace(p));
    }
}

TEST_CASE("sturm_count") {
    // quadratic-formula oracle: roots (3 +- sqrt(5))/2, both positive
    CHECK(sturm_count(P("x^2 - 3*x + 1"), Rat(0), std::nullopt) == 2);
    CHECK(sturm_count(P("x^2 + 1"), std::nullopt, std::nullopt) == 0);
    // sign-change oracle at 0, 1/4, 1, 3, 4: -1, +, +, -, + gives 3 roots
    CHECK(sturm_count(P("x^3 - 5*x^2 + 6*x - 1"), Rat(0), std::nullopt) == 3);
    // half-open convention: root at the upper endpoint is counted, at the
    // lower endpoint it is not
    CHECK(sturm_count(P("x^2 - 1"), Rat(0), Rat(1)) == 1);
    CHECK(sturm_count(P("x^2 - 1"), Rat(1), Rat(2)) == 0);
    CHECK(sturm_count(P("x^2 - 1"), Rat(-1), Rat(1)) == 1);
    CHECK_THROWS_AS(sturm_count(IntPoly(), Rat(0), Rat(1)), std::invalid_argument);
}

TEST_CASE("isolate_real_roots") {
    auto iv = isolate_real_roots(P("x^2 - x"), Rat(1, 4));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].lo < 0);
    CHECK(iv[0].hi >= 0);
    CHECK(iv[0].multiplicity == 1);
    CHECK(iv[1].lo < 1);
    CHECK(iv[1].hi >= 1);
    CHECK(iv[0].hi - iv[0].lo <= Rat(1, 4));

    auto sq = isolate_real_roots(P("x^2 - 2*x + 1"), Rat(1, 4));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].multiplicity == 2);
    CHECK(sq[0].lo < 1);
    CHECK(sq[0].hi >= 1);

    auto golden = isolate_real_roots(P("x^2 - 3*x + 1"), Rat(1, 1000));
    REQUIRE(golden.size() == 2);
    const double r0 = (3 - std::sqrt(5.0)) / 2;  // 0.3819...
    const double r1 = (3 + std::sqrt(5.0)) / 2;  // 2.6180...
    CHECK(golden[0].lo.get_d() <= r0);
    CHECK(golden[0].hi.get_d() >= r0 - 1e-12);
    CHECK(golden[1].lo.get_d() <= r1);
    CHECK(golden[1].hi.get_d() >= r1 - 1e-12);
    for (const auto& r : golden) CHECK(r.hi - r.lo <= Rat(1, 1000));

    CHECK_THROWS_AS(isolate_real_roots(IntPoly(), Rat(1, 4)), std::invalid_argument);
}

TEST_CASE("root counting: sturm vs isolation vs sign-scan oracle") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 120; ++iter) {
        IntPoly p = random_monic(rng, 1 + static_cast<int>(rng() % 8), 50);
        int by_sturm = sturm_count(p, std::nullopt, std::nullopt);
        auto iv = isolate_real_roots(p, Rat(1, 1024));
        CHECK(by_sturm == static_cast<int>(iv.size()));
        CHECK(by_sturm == sign_scan_root_count(p));
        for (std::size_t i = 0; i + 1 < iv.size(); ++i) CHECK(iv[i].hi <= iv[i + 1].lo);
    }
}

TEST_CASE("is_totally_positive") {
    CHECK(is_totally_positive(P("x^2 - 3*x + 1")));         // roots (3 +- sqrt 5)/2 > 0
    CHECK_FALSE(is_totally_positive(P("x^2 + 1")));
    CHECK(is_totally_positive(P("x^2 - 4*x + 2")));          // roots 2 +- sqrt 2 > 0
    CHECK_FALSE(is_totally_positive(P("x^2 - 1")));          // root -1
    CHECK_FALSE(is_totally_positive(P("x^2 - x")));          // root at 0
    CHECK(is_totally_positive(P("x^2 - 2*x + 1")));          // double root 1
}

TEST_CASE("reciprocal transform") {
    CHECK(to_reciprocal(P("x - 1")) == P("x^2 - 3*x + 1"));
    CHECK(to_reciprocal(P("x")) == P("x^2 - 2*x + 1"));
    CHECK(to_reciprocal(P("x^2 - 3*x + 1")) == P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1"));

    // identity oracle: P(z) = z^m Q(z + 1/z - 2) at rational sample points
    for (const char* qs : {"x - 1", "x^2 - 3*x + 1", "x^3 + 4*x - 7"}) {
        IntPoly q = P(qs);
        IntPoly p = to_reciprocal(q);
        for (Rat z : {Rat(2), Rat(3), Rat(1, 2), Rat(-1), Rat(5, 3)}) {
            Rat lhs = eval_exact(p, z);
            Rat w = z + Rat(1) / z - 2;
            Rat rhs = eval_exact(q, w);
            for (int i = 0; i < q.degree(); ++i) rhs *= z;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("from_reciprocal") {
    CHECK(from_reciprocal(P("x^2 - 3*x + 1")) == P("x - 1"));
    CHECK(from_reciprocal(P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1")) == P("x^2 - 3*x + 1"));
    CHECK_THROWS_WITH_AS(from_reciprocal(P("x^2 - 3*x + 2")),
                         doctest::Contains("not reciprocal"), std::invalid_argument);
    CHECK_THROWS_AS(from_reciprocal(P("x^3 - 3*x^2 - 3*x + 1")), std::invalid_argument);
}

TEST_CASE("reciprocal round-trip and trace identity on random monics") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        IntPoly q = random_monic(rng, 1 + static_cast<int>(rng() % 10), 30);
        IntPoly p = to_reciprocal(q);
        CHECK(p.is_monic());
        CHECK(p.degree() == 2 * q.degree());
        CHECK(from_reciprocal(p) == q);
        CHECK(trace(p) == trace(q) + 2 * q.degree());
    }
}

TEST_CASE("arithmetic plumbing") {
    IntPoly a = P("x^3 - 2*x + 5");
    IntPoly b = P("2*x^2 + x - 3");
    CHECK(divide_exact(a * b, b).value() == a);
    CHECK_FALSE(divide_exact(a * b + IntPoly::constant(1), b).has_value());
    CHECK(content(P("6*x^2 - 9*x + 3")) == 3);
    CHECK(primitive_part(P("6*x^2 - 9*x + 3")) == P("2*x^2 - 3*x + 1"));

    IntPoly g = P("x^2 + x + 1");
    CHECK(gcd(a * g, b * g) == g);
    CHECK(squarefree_part(g * g * a) == primitive_part(g * a));
}
