#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kgl/smith.hpp"

using namespace kgl;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

// boundary matrix of the six relation squares of the 2x3 single-vertex graph,
// rows f0,f1,g0,g1,g2 / columns f0g0,f0g1,f0g2,f1g0,f1g1,f1g2
IntMatrix two_by_three_boundary() {
    return from_rows({{1, 1, 1, -1, -1, -1},
                      {-1, -1, -1, 1, 1, 1},
                      {1, 0, -1, 1, 0, -1},
                      {-1, 1, 0, -1, 1, 0},
                      {0, -1, 1, 0, -1, 1}});
}

void check_smith_invariants(const IntMatrix& a, const Smith& s) {
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.Uinv == IntMatrix::identity(a.rows()));
    CHECK(s.V * s.Vinv == IntMatrix::identity(a.cols()));
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
        if (s.diagonal[i + 1] == 0) continue;
        REQUIRE(s.diagonal[i] != 0);
        CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
    for (const auto& d : s.diagonal) CHECK(d >= 0);
    // off-diagonal zero
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D.at(i, j) == 0);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span) {
    IntMatrix m(r, c);
    std::uniform_int_distribution<int> dist(-span, span);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

}  // namespace

TEST_CASE("smith of the zero matrix is trivial") {
    IntMatrix z(3, 4);
    Smith s = smith_normal_form(z);
    CHECK(s.rank == 0);
    CHECK(s.U == IntMatrix::identity(3));
    CHECK(s.V == IntMatrix::identity(4));
    CHECK(s.D == z);
}

TEST_CASE("smith of the relation boundary has diagonal (1,1,1,0,0)") {
    IntMatrix d2 = two_by_three_boundary();
    Smith s = smith_normal_form(d2);
    check_smith_invariants(d2, s);
    CHECK(s.rank == 3);
    CHECK(s.diagonal == IntVec{1, 1, 1, 0, 0});
    CHECK(kernel_basis(d2).cols() == 3);
}

TEST_CASE("smith of 1 - action matrix on the degree-2 cycle space") {
    // [[2,1,0],[-2,0,1],[1,0,0]] - I: rank 2, kernel rank 1
    IntMatrix m = from_rows({{1, 1, 0}, {-2, -1, 1}, {1, 0, -1}});
    Smith s = smith_normal_form(m);
    check_smith_invariants(m, s);
    CHECK(s.rank == 2);
    CHECK(kernel_basis(m).cols() == 1);
}

TEST_CASE("solve_integer membership in the boundary image") {
    IntMatrix d2 = two_by_three_boundary();
    // f0 - f1 + g0 - g1 is an image vector
    auto hit = solve_integer(d2, {1, -1, 1, -1, 0});
    REQUIRE(hit.has_value());
    CHECK(d2.apply(*hit) == IntVec{1, -1, 1, -1, 0});
    // f0 alone is not
    CHECK_FALSE(solve_integer(d2, {1, 0, 0, 0, 0}).has_value());
}

TEST_CASE("solve_mod parity examples") {
    IntMatrix a(1, 1);
    a.at(0, 0) = 2;
    CHECK_FALSE(solve_mod(a, {1}, 4).has_value());
    auto x = solve_mod(a, {1}, 3);
    REQUIRE(x.has_value());
    CHECK(mod_floor(2 * (*x)[0] - 1, 3) == 0);
}

TEST_CASE("solver agrees with an independent residue test on random systems") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        IntMatrix a = random_matrix(rng, 3 + iter % 3, 3 + (iter / 2) % 3, 4);
        IntVec b;
        std::uniform_int_distribution<int> dist(-6, 6);
        for (std::size_t i = 0; i < a.rows(); ++i) b.push_back(dist(rng));
        Int m = 2 + iter % 11;

        auto x = solve_mod(a, b, m);
        // residue route: U b must be divisible by gcd(d_i, m) on pivot rows
        Smith s = smith_normal_form(a);
        IntVec ub = s.U.apply(b);
        bool solvable = true;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Int d = i < s.diagonal.size() ? s.diagonal[i] : Int(0);
            Int g = boost::multiprecision::gcd(d, m);
            if (g == 0) g = m;
            if (mod_floor(ub[i], g) != 0) solvable = false;
        }
        CHECK(x.has_value() == solvable);
        if (x) {
            IntVec ax = a.apply(*x);
            for (std::size_t i = 0; i < ax.size(); ++i) CHECK(mod_floor(ax[i] - b[i], m) == 0);
        }
    }
}

TEST_CASE("smith invariants hold on random matrices, both pivot rules") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix a = random_matrix(rng, 1 + iter % 5, 1 + (iter / 3) % 5, 9);
        Smith s1 = smith_normal_form(a);
        check_smith_invariants(a, s1);
        Smith s2 = smith_normal_form(a, PivotRule::Randomized, 1000 + iter);
        check_smith_invariants(a, s2);
        CHECK(s1.diagonal == s2.diagonal);  // canonical form is pivot-independent
    }
}

TEST_CASE("kernel basis spans the kernel exactly") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix a = random_matrix(rng, 2 + iter % 3, 4, 5);
        IntMatrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        // any random kernel combination is solvable back in the basis
        std::uniform_int_distribution<int> dist(-3, 3);
        IntVec coeffs;
        for (std::size_t j = 0; j < k.cols(); ++j) coeffs.push_back(dist(rng));
        CHECK(lattice_contains(k, k.apply(coeffs)));
    }
}

TEST_CASE("lattice operations") {
    IntMatrix a = from_rows({{2, 0}, {0, 3}});
    IntMatrix b = from_rows({{6, 0}, {0, 3}});
    CHECK(lattice_subset(b, a));
    CHECK_FALSE(lattice_subset(a, b));
    CHECK(lattice_equal(a, a));
    IntMatrix basis = column_lattice_basis(a.hstack(b));
    CHECK(lattice_equal(basis, a));
}
