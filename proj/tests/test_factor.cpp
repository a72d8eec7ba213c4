#include "traceforge/factor.hpp"

#include <map>
#include <random>

#include "doctest.h"

using namespace traceforge;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

std::vector<Int> signed_divisors(const Int& v) {
    std::vector<Int> out;
    Int a = abs(v);
    for (Int d = 1; d * d <= a; ++d) {
        if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) continue;
        out.push_back(d);
        out.push_back(-d);
        if (d * d != a) {
            out.push_back(a / d);
            out.push_back(-(a / d));
        }
    }
    return out;
}

// brute-force irreducibility oracle for monic polynomials of degree <= 6.
// A monic factor g must satisfy g(0) | p(0), g(1) | p(1), g(-1) | p(-1);
// enumerating those divisor combinations covers every candidate of degree
// <= 3, which suffices up to degree 6 (any factorization has a part of
// degree <= 3). Completely independent of the Hensel machinery.
bool brute_force_irreducible(const IntPoly& p) {
    REQUIRE(p.is_monic());
    const int n = p.degree();
    REQUIRE(n <= 6);
    if (n == 1) return true;
    if (p.coeff(0) == 0) return false;  // x divides
    Int p0 = p.coeff(0);
    Int p1v = eval_exact(p, Rat(1)).get_num();
    Int pm1v = eval_exact(p, Rat(-1)).get_num();
    // integer roots divide p(0)
    for (const Int& d : signed_divisors(p0))
        if (eval_exact(p, Rat(d)) == 0) return false;
    if (n <= 3) return true;
    if (p1v == 0 || pm1v == 0) return false;  // roots at +-1 (already caught, defensive)
    // quadratic factors x^2 + b x + c: c | p(0), g(1) = 1 + b + c | p(1)
    for (const Int& c : signed_divisors(p0))
        for (const Int& d1 : signed_divisors(p1v)) {
            Int b = d1 - 1 - c;
            if (divide_exact(p, IntPoly{std::vector<Int>{c, b, Int(1)}})) return false;
        }
    if (n < 6) return true;
    // cubic factors x^3 + b x^2 + c x + d for the 3+3 split:
    // d | p(0), g(1) = 1+b+c+d | p(1), g(-1) = -1+b-c+d | p(-1)
    for (const Int& d : signed_divisors(p0))
        for (const Int& e1 : signed_divisors(p1v))
            for (const Int& e2 : signed_divisors(pm1v)) {
                Int two_b = e1 + e2 - 2 * d;
                Int two_c = e1 - e2 - 2;
                if (two_b % 2 != 0 || two_c % 2 != 0) continue;
                IntPoly cand{std::vector<Int>{d, two_c / 2, two_b / 2, Int(1)}};
                if (divide_exact(p, cand)) return false;
            }
    return true;
}

IntPoly random_poly(std::mt19937_64& rng, int deg, int coeff_range, bool monic) {
    std::uniform_int_distribution<int> dist(-coeff_range, coeff_range);
    std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = dist(rng);
    int lead = monic ? 1 : dist(rng);
    while (lead == 0) lead = dist(rng);
    c[static_cast<std::size_t>(deg)] = lead;
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("squarefree_decompose") {
    auto d1 = squarefree_decompose(P("x^3 - 2*x^2 + x"));  // x (x-1)^2
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == std::pair{P("x"), 1});
    CHECK(d1[1] == std::pair{P("x - 1"), 2});

    auto d2 = squarefree_decompose(P("x^2 - 3*x + 1"));
    REQUIRE(d2.size() == 1);
    CHECK(d2[0] == std::pair{P("x^2 - 3*x + 1"), 1});

    // (x^2-1)^2 expansion oracle
    IntPoly sq = P("x^2 - 1") * P("x^2 - 1");
    CHECK(sq == P("x^4 - 2*x^2 + 1"));
    auto d3 = squarefree_decompose(sq);
    REQUIRE(d3.size() == 1);
    CHECK(d3[0] == std::pair{P("x^2 - 1"), 2});

    CHECK_THROWS_AS(squarefree_decompose(IntPoly()), std::invalid_argument);
}

TEST_CASE("factor basics") {
    auto f1 = factor(P("x^2 - 1"));
    CHECK(f1.unit == 1);
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0].first == P("x - 1"));
    CHECK(f1.factors[1].first == P("x + 1"));

    // product expansion oracle
    CHECK(P("x - 1") * P("x^2 - 3*x + 1") == P("x^3 - 4*x^2 + 4*x - 1"));
    auto f2 = factor(P("x^3 - 4*x^2 + 4*x - 1"));
    REQUIRE(f2.factors.size() == 2);
    CHECK(f2.factors[0].first == P("x - 1"));
    CHECK(f2.factors[1].first == P("x^2 - 3*x + 1"));

    auto f3 = factor(P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1"));
    CHECK(f3.factors.size() == 1);
    CHECK(f3.factors[0].second == 1);
    CHECK(brute_force_irreducible(P("x^4 - 7*x^3 + 13*x^2 - 7*x + 1")));

    auto fc = factor(P("-6"));
    CHECK(fc.unit == -6);
    CHECK(fc.factors.empty());

    CHECK(factor(P("12*x^2 - 12")).to_string() == "12 * (x - 1) * (x + 1)");
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(P("x - 2")));
    CHECK_FALSE(is_irreducible(P("x^2 - 1")));
    // no rational roots (divisors of 1 give values 1, -13) and degree 3
    CHECK(is_irreducible(P("x^3 - 5*x^2 + 6*x - 1")));
    CHECK(brute_force_irreducible(P("x^3 - 5*x^2 + 6*x - 1")));
    CHECK_FALSE(is_irreducible(P("2*x - 4")));  // content 2
    CHECK_THROWS_AS(is_irreducible(P("7")), std::invalid_argument);
}

TEST_CASE("factor round-trip on random products") {
    std::mt19937_64 rng(314159);
    int done = 0;
    while (done < 250) {
        int parts = 2 + static_cast<int>(rng() % 3);
        IntPoly prod = IntPoly::constant(1);
        std::map<std::string, int> expected;
        int total_deg = 0;
        for (int i = 0; i < parts; ++i) {
            IntPoly f = random_poly(rng, 1 + static_cast<int>(rng() % 4), 8, false);
            if (f.degree() < 1) continue;
            f = primitive_part(f);
            if (f.leading() < 0) f = -f;
            if (!is_irreducible(f)) continue;
            total_deg += f.degree();
            if (total_deg > 12) break;
            prod = prod * f;
            expected[f.to_string()] += 1;
        }
        if (expected.empty()) continue;
        ++done;
        Factorization got = factor(prod);
        CHECK(got.product() == prod);
        std::map<std::string, int> gotmap;
        for (const auto& [f, mult] : got.factors) gotmap[f.to_string()] += mult;
        CHECK(gotmap == expected);
        for (const auto& [f, mult] : got.factors) CHECK(is_irreducible(f));
    }
}

TEST_CASE("factor agrees with brute-force oracle on random monic inputs") {
    std::mt19937_64 rng(2718);
    for (int iter = 0; iter < 400; ++iter) {
        int deg = 2 + static_cast<int>(rng() % 5);
        IntPoly p = random_poly(rng, deg, 20, true);
        bool oracle = brute_force_irreducible(p);
        Factorization f = factor(p);
        bool got = f.factors.size() == 1 && f.factors[0].second == 1;
        CHECK(got == oracle);
        CHECK(f.product() == p);
        for (const auto& [g, mult] : f.factors) CHECK(is_irreducible(g));
    }
}
