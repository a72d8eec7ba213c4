#include "traceforge/lll.hpp"

#include <random>

#include "doctest.h"

using namespace traceforge;

namespace {

std::vector<Int> row(std::initializer_list<long> v) {
    std::vector<Int> r;
    for (long x : v) r.emplace_back(x);
    return r;
}

Int norm2(const std::vector<Int>& v) {
    Int acc = 0;
    for (const Int& x : v) acc += x * x;
    return acc;
}

// Gram determinant det(B B^T), exact
Rat gram_det(const std::vector<std::vector<Int>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int acc = 0;
            for (std::size_t c = 0; c < rows[i].size(); ++c) acc += rows[i][c] * rows[j][c];
            g[i][j] = Rat(acc);
        }
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && g[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(g[piv], g[col]);
            det = -det;
        }
        det *= g[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Rat f = g[r][col] / g[col][col];
            for (std::size_t c = col; c < n; ++c) g[r][c] -= f * g[col][c];
        }
    }
    return det;
}

// recompute the Gram-Schmidt data of a basis from scratch (independent of
// the implementation's incremental bookkeeping)
void gso(const std::vector<std::vector<Int>>& rows, std::vector<std::vector<Rat>>& mu,
         std::vector<Rat>& B) {
    const std::size_t n = rows.size();
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    B.assign(n, Rat(0));
    std::vector<std::vector<Rat>> star(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> v(rows[i].size());
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = Rat(rows[i][c]);
        for (std::size_t j = 0; j < i; ++j) {
            Rat num(0);
            for (std::size_t c = 0; c < v.size(); ++c) num += Rat(rows[i][c]) * star[j][c];
            mu[i][j] = num / B[j];
            for (std::size_t c = 0; c < v.size(); ++c) v[c] -= mu[i][j] * star[j][c];
        }
        for (const Rat& c : v) B[i] += c * c;
        star[i] = std::move(v);
    }
}

LatticeBasis random_basis(std::mt19937_64& rng, int dim, int range) {
    std::uniform_int_distribution<int> dist(-range, range);
    LatticeBasis b;
    b.rows.assign(static_cast<std::size_t>(dim), {});
    for (auto& r : b.rows) {
        r.resize(static_cast<std::size_t>(dim));
        for (auto& v : r) v = dist(rng);
    }
    return b;
}

}  // namespace

TEST_CASE("lll on simple bases") {
    LatticeBasis id;
    id.rows = {row({1, 0, 0}), row({0, 1, 0}), row({0, 0, 1})};
    CHECK(lll_reduce(id).rows == id.rows);

    LatticeBasis one;
    one.rows = {row({5})};
    CHECK(lll_reduce(one).rows == one.rows);

    LatticeBasis dep;
    dep.rows = {row({1, 2}), row({2, 4})};
    CHECK_THROWS_AS(lll_reduce(dep), LatticeError);
}

TEST_CASE("lll finds the shortest vector of the spec basis") {
    LatticeBasis b;
    b.rows = {row({1, 1, 1}), row({-1, 0, 2}), row({3, 5, 6})};
    // exhaustive enumeration oracle over integer combinations in [-10,10]^3
    Int best = -1;
    for (int a = -10; a <= 10; ++a)
        for (int c = -10; c <= 10; ++c)
            for (int d = -10; d <= 10; ++d) {
                if (a == 0 && c == 0 && d == 0) continue;
                std::vector<Int> v(3, Int(0));
                for (std::size_t i = 0; i < 3; ++i)
                    v[i] = Int(a) * b.rows[0][i] + Int(c) * b.rows[1][i] + Int(d) * b.rows[2][i];
                Int n2 = norm2(v);
                if (best < 0 || n2 < best) best = n2;
            }
    CHECK(best == 1);
    LatticeBasis red = lll_reduce(b);
    CHECK(norm2(red.rows[0]) == 1);
}

TEST_CASE("lll properties on random bases") {
    std::mt19937_64 rng(555);
    int done = 0;
    while (done < 200) {
        int dim = 2 + static_cast<int>(rng() % 5);
        LatticeBasis b = random_basis(rng, dim, 30);
        if (gram_det(b.rows) == 0) continue;
        ++done;
        LatticeBasis red = lll_reduce(b);

        // same lattice volume
        CHECK(gram_det(red.rows) == gram_det(b.rows));

        // size reduction and Lovasz condition, via a from-scratch GSO
        std::vector<std::vector<Rat>> mu;
        std::vector<Rat> B;
        gso(red.rows, mu, B);
        for (std::size_t i = 0; i < red.rows.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(2 * abs(mu[i][j]) <= 1);
        for (std::size_t k = 1; k < red.rows.size(); ++k)
            CHECK(B[k] >= (red.delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]);

        // norm bound: ||b1||^(2n) <= 2^(n(n-1)) det(Gram)
        Int lhs;
        mpz_pow_ui(lhs.get_mpz_t(), norm2(red.rows[0]).get_mpz_t(),
                   static_cast<unsigned long>(dim));
        Rat rhs = gram_det(b.rows);
        Int two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2,
                      static_cast<unsigned long>(dim * (dim - 1)));
        CHECK(Rat(lhs) <= Rat(two_pow) * rhs);

        // determinism
        CHECK(lll_reduce(b).rows == red.rows);
    }
}

TEST_CASE("lll shortest vector vs enumeration oracle in dimension <= 4") {
    std::mt19937_64 rng(777);
    int done = 0;
    while (done < 60) {
        int dim = 2 + static_cast<int>(rng() % 3);
        LatticeBasis b = random_basis(rng, dim, 25);
        if (gram_det(b.rows) == 0) continue;
        ++done;
        LatticeBasis red = lll_reduce(b);
        // enumerate combinations of the reduced basis; the shortest lattice
        // vector is a small combination of an LLL-reduced basis in dim <= 4
        const int C = 6;
        Int best = -1;
        std::vector<int> idx(static_cast<std::size_t>(dim), -C);
        while (true) {
            bool nonzero = false;
            for (int v : idx) nonzero |= v != 0;
            if (nonzero) {
                std::vector<Int> v(red.rows[0].size(), Int(0));
                for (int i = 0; i < dim; ++i)
                    for (std::size_t c = 0; c < v.size(); ++c)
                        v[c] += Int(idx[static_cast<std::size_t>(i)]) * red.rows[static_cast<std::size_t>(i)][c];
                Int n2 = norm2(v);
                if (n2 > 0 && (best < 0 || n2 < best)) best = n2;
            }
            int i = 0;
            while (i < dim && idx[static_cast<std::size_t>(i)] == C) {
                idx[static_cast<std::size_t>(i)] = -C;
                ++i;
            }
            if (i == dim) break;
            ++idx[static_cast<std::size_t>(i)];
        }
        // ||b1||^2 <= 2^(n-1) * lambda1^2
        Int lhs = norm2(red.rows[0]);
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(dim - 1));
        CHECK(lhs <= scale * best);
    }
}

TEST_CASE("build_search_lattice fixed-point values") {
    SearchLatticeSpec spec;
    spec.base_poly = IntPoly::x();
    spec.k = 1;
    spec.t = 1.0;
    spec.r = 1;
    spec.control_points = {1.0, 2.0};
    spec.scale = 1000;
    LatticeBasis lat = build_search_lattice(spec);
    REQUIRE(lat.rows.size() == 2);
    REQUIRE(lat.rows[0].size() == 4);
    // identity block
    CHECK(lat.rows[0][0] == 1);
    CHECK(lat.rows[0][1] == 0);
    CHECK(lat.rows[1][0] == 0);
    CHECK(lat.rows[1][1] == 1);
    // direct formula oracle: round(1000 * x^(l+1) * exp(-2x))
    CHECK(lat.rows[0][2] == 135);
    CHECK(lat.rows[0][3] == 37);
    CHECK(lat.rows[1][2] == 135);
    CHECK(lat.rows[1][3] == 73);

    SearchLatticeSpec empty_aux;
    empty_aux.base_poly = IntPoly::constant(1);
    empty_aux.k = 1;
    empty_aux.t = 1.0;
    empty_aux.r = 0;
    empty_aux.control_points = {1.0};
    empty_aux.scale = 100;
    LatticeBasis lat2 = build_search_lattice(empty_aux);
    REQUIRE(lat2.rows.size() == 2);
    CHECK(lat2.rows[0][2] == 37);  // 100 * e^-1 = 36.79
    CHECK(lat2.rows[1][2] == 37);

    SearchLatticeSpec k0 = empty_aux;
    k0.k = 0;
    CHECK(build_search_lattice(k0).rows.size() == 1);

    SearchLatticeSpec bad = spec;
    bad.control_points = {1e-4};  // within eps_root of the root of x
    CHECK_THROWS_AS(build_search_lattice(bad), LatticeError);

    CHECK(filter_control_points({1e-4, 1.0, 2.0}, IntPoly::x(), 1e-3) ==
          std::vector<double>{1.0, 2.0});
}

TEST_CASE("extract_candidates decodes coefficient blocks") {
    SearchLatticeSpec spec;
    spec.base_poly = IntPoly::x();
    spec.k = 2;
    spec.t = 1.0;
    spec.r = 1;
    spec.control_points = {1.0};
    LatticeBasis fake;
    fake.rows = {row({-1, 1, 0, 7}),   // x - 1
                 row({2, -6, 2, 9}),   // content 2 removed: x^2 - 3x + 1
                 row({0, 0, 0, 3}),    // zero coefficient block: dropped
                 row({1, -1, 0, 11})}; // sign duplicate of x - 1
    auto cands = extract_candidates(fake, spec, 4);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0] == IntPoly::parse("x - 1"));
    CHECK(cands[1] == IntPoly::parse("x^2 - 3*x + 1"));
}

TEST_CASE("lattice serialization") {
    LatticeBasis b;
    b.rows = {row({1, -2}), row({3, 4})};
    CHECK(b.to_text() == "1 -2\n3 4\n");
}
