#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgl/complex.hpp"
#include "kgl/smith.hpp"

using namespace kgl;

namespace {

CubicalComplex two_by_three_cx() {
    return CubicalComplex::build(make_theta_graph(2, 3, theta_cyclic(2, 3)));
}

Automorphism standard_beta(const KGraph& g) {
    auto e = [&](const char* id) { return *g.edge_index(id); };
    return Automorphism::build(
        g, {0}, {e("f1"), e("f0"), e("g1"), e("g2"), e("g0")});
}

IntVec chain(const std::vector<long>& v) { return IntVec(v.begin(), v.end()); }

}  // namespace

TEST_CASE("boundary columns match the six relation formulas") {
    CubicalComplex cx = two_by_three_cx();
    REQUIRE(cx.count(1) == 5);
    REQUIRE(cx.count(2) == 6);
    IntMatrix d2 = cx.boundary(2);
    // rows f0,f1,g0,g1,g2; columns f0g0,f0g1,f0g2,f1g0,f1g1,f1g2
    std::vector<IntVec> expected = {
        chain({1, -1, 1, -1, 0}),   // f0g0 -> f0+g0-g1-f1
        chain({1, -1, 0, 1, -1}),   // f0g1 -> f0+g1-g2-f1
        chain({1, -1, -1, 0, 1}),   // f0g2 -> f0+g2-g0-f1
        chain({-1, 1, 1, -1, 0}),   // f1g0 -> f1+g0-g1-f0
        chain({-1, 1, 0, 1, -1}),   // f1g1 -> f1+g1-g2-f0
        chain({-1, 1, -1, 0, 1}),   // f1g2 -> f1+g2-g0-f0
    };
    for (std::size_t j = 0; j < 6; ++j) CHECK(d2.column(j) == expected[j]);
    CHECK(cx.boundary(1).is_zero());  // single vertex
    CHECK((cx.boundary(1) * cx.boundary(2)).is_zero());
}

TEST_CASE("boundary of an edge is source minus range") {
    CubicalComplex cx = CubicalComplex::build(make_tower(3).graph);
    IntMatrix d1 = cx.boundary(1);
    const KGraph& g = cx.graph();
    for (std::size_t j = 0; j < cx.count(1); ++j) {
        const Cube& c = cx.cube_list(1)[j];
        const EdgeRec& e = g.edge(c.edges[0]);
        IntVec col = d1.column(j);
        for (std::size_t v = 0; v < cx.count(0); ++v) {
            Int expect = (static_cast<int>(v) == e.src ? 1 : 0) -
                         (static_cast<int>(v) == e.rng ? 1 : 0);
            CHECK(col[v] == expect);
        }
    }
}

TEST_CASE("homology of the 2x3 graph") {
    CubicalComplex cx = two_by_three_cx();
    FGAbGroup h0 = homology(cx, 0), h1 = homology(cx, 1), h2 = homology(cx, 2);
    CHECK(h0.describe() == "Z");
    CHECK(h1.describe() == "Z^2");
    CHECK(h2.describe() == "Z^3");
    CHECK(homology(cx, 3).is_trivial());
}

TEST_CASE("homology of bouquets and towers") {
    for (int n : {1, 2, 3, 5}) {
        CubicalComplex cx = CubicalComplex::build(make_bouquet(n));
        CHECK(homology(cx, 0).describe() == "Z");
        CHECK(homology(cx, 1).free_rank() == static_cast<std::size_t>(n));
        CHECK(homology(cx, 1).invariant_factors().empty());
    }
    CubicalComplex t4 = CubicalComplex::build(make_tower(4).graph);
    CHECK(homology(t4, 0).describe() == "Z");
    CHECK(homology(t4, 1).describe() == "Z^3");  // 6 edges - 4 vertices + 1
}

TEST_CASE("the listed kernel generators span ker d2 and transform as stated") {
    CubicalComplex cx = two_by_three_cx();
    IntMatrix d2 = cx.boundary(2);
    IntVec b1 = chain({1, 0, 2, 1, 2, 0});    // f0g0 + f1g0 + 2 f1g1 + 2 f0g2
    IntVec b2 = chain({-2, 1, -2, 0, -3, 0}); // -2 f0g0 + f0g1 - 3 f1g1 - 2 f0g2
    IntVec b3 = chain({2, 0, 1, 0, 2, 1});    // 2 f0g0 + 2 f1g1 + f0g2 + f1g2
    CHECK(vec_is_zero(d2.apply(b1)));
    CHECK(vec_is_zero(d2.apply(b2)));
    CHECK(vec_is_zero(d2.apply(b3)));
    IntMatrix bs = IntMatrix::from_columns(6, {b1, b2, b3});
    CHECK(lattice_equal(bs, kernel_basis(d2)));

    // chain-level action: beta b1 = 2b1 + b2, beta b2 = -2b1 + b3, beta b3 = b1
    Automorphism beta = standard_beta(cx.graph());
    IntMatrix p2 = cx.automorphism_action(beta, 2);
    CHECK(p2.apply(b1) == vec_add(vec_scaled(b1, 2), b2));
    CHECK(p2.apply(b2) == vec_add(vec_scaled(b1, -2), b3));
    CHECK(p2.apply(b3) == b1);
}

TEST_CASE("induced action on degree-1 homology is the identity") {
    CubicalComplex cx = two_by_three_cx();
    Automorphism beta = standard_beta(cx.graph());
    GroupHom b1 = pushforward_hom(cx, beta, 1);
    CHECK(b1.is_identity());
    GroupHom identity = pushforward_hom(cx, Automorphism::identity(cx.graph()), 2);
    CHECK(identity.is_identity());
}

TEST_CASE("kernel and image of 1 - beta_* on degree-2 homology") {
    CubicalComplex cx = two_by_three_cx();
    Automorphism beta = standard_beta(cx.graph());
    FGAbGroup h2 = homology(cx, 2);
    IntMatrix p2 = cx.automorphism_action(beta, 2);
    GroupHom one_minus = induced_hom(IntMatrix::identity(6) - p2, h2, h2);
    FGAbGroup ker = kernel_group(one_minus);
    CHECK(ker.describe() == "Z");
    FGAbGroup im = image_group(one_minus);
    CHECK(im.free_rank() == 2);
    CHECK(im.invariant_factors().empty());
}

TEST_CASE("cube action commutes with the boundary") {
    CubicalComplex cx = two_by_three_cx();
    Automorphism beta = standard_beta(cx.graph());
    for (int r = 1; r <= 2; ++r) {
        IntMatrix p = cx.automorphism_action(beta, r);
        IntMatrix p_down = cx.automorphism_action(beta, r - 1);
        CHECK(p_down * cx.boundary(r) == cx.boundary(r) * p);
    }
    for (int r = 0; r < 2; ++r) {
        IntMatrix pt = cx.automorphism_action(beta, r).transpose();
        IntMatrix pt_up = cx.automorphism_action(beta, r + 1).transpose();
        CHECK(cx.coboundary(r) * pt == pt_up * cx.coboundary(r));
    }
}

TEST_CASE("cohomology of the 2x3 graph with cyclic coefficients") {
    CubicalComplex cx = two_by_three_cx();
    for (long m : {2, 3, 4, 6}) {
        CoeffGroup zm = CoeffGroup::mod(m);
        CHECK(cohomology(cx, 0, zm).group.same_iso_class(FGAbGroup::abstract_group(0, {m})));
        CHECK(cohomology(cx, 1, zm).group.same_iso_class(FGAbGroup::abstract_group(0, {m, m})));
        CHECK(cohomology(cx, 2, zm).group.same_iso_class(
            FGAbGroup::abstract_group(0, {m, m, m})));
    }
    CHECK(cohomology(cx, 0, CoeffGroup::integers()).group.describe() == "Z");
    CHECK(cohomology(cx, 1, CoeffGroup::integers()).group.describe() == "Z^2");
    CHECK(cohomology(cx, 2, CoeffGroup::integers()).group.describe() == "Z^3");
    CHECK(cohomology(cx, 3, CoeffGroup::integers()).group.is_trivial());
}

TEST_CASE("degree-1 integral cohomology of a bouquet is free of rank n") {
    for (int n : {1, 2, 4}) {
        CubicalComplex cx = CubicalComplex::build(make_bouquet(n));
        FGAbGroup h = cohomology(cx, 1, CoeffGroup::integers()).group;
        CHECK(h.free_rank() == static_cast<std::size_t>(n));
        CHECK(h.invariant_factors().empty());
    }
}

TEST_CASE("uct route agrees with the direct route") {
    std::vector<CubicalComplex> complexes;
    complexes.push_back(two_by_three_cx());
    complexes.push_back(CubicalComplex::build(make_bouquet(3)));
    complexes.push_back(CubicalComplex::build(make_tower(4).graph));
    for (const auto& cx : complexes)
        for (long m : {2, 3, 4, 5, 6, 12})
            for (int r = 0; r <= cx.top_dim() + 1; ++r) {
                CoeffGroup zm = CoeffGroup::mod(m);
                FGAbGroup direct = cohomology(cx, r, zm).group;
                FGAbGroup via_uct = cohomology_via_uct(cx, r, zm).group;
                CHECK(direct.same_iso_class(via_uct));
            }
}

TEST_CASE("integral duality: free ranks match homology, torsion shifts down") {
    std::vector<CubicalComplex> complexes;
    complexes.push_back(two_by_three_cx());
    complexes.push_back(CubicalComplex::build(make_tower(5).graph));
    for (const auto& cx : complexes)
        for (int r = 0; r <= cx.top_dim(); ++r) {
            FGAbGroup hr = cohomology(cx, r, CoeffGroup::integers()).group;
            CHECK(hr.free_rank() == homology(cx, r).free_rank());
            IntVec torsion_below =
                r >= 1 ? homology(cx, r - 1).invariant_factors() : IntVec{};
            CHECK(hr.invariant_factors() == torsion_below);
        }
}

TEST_CASE("circle-valued descriptors via divisible duality") {
    CubicalComplex cx = two_by_three_cx();
    CohomValue h2 = cohomology(cx, 2, CoeffGroup::circle());
    REQUIRE(h2.circle);
    CHECK(h2.circ.circle_rank == 3);
    CHECK(h2.circ.torsion.empty());
    CHECK(h2.circ.describe() == "T^3");
    CohomValue h0 = cohomology_via_uct(cx, 0, CoeffGroup::circle());
    CHECK(h0.circ.circle_rank == 1);
}

TEST_CASE("pullback on degree-1 cohomology is the identity for the standard action") {
    CubicalComplex cx = two_by_three_cx();
    Automorphism beta = standard_beta(cx.graph());
    CHECK(pullback_hom(cx, beta, 1, 0).is_identity());
    CHECK(pullback_hom(cx, Automorphism::identity(cx.graph()), 2, 0).is_identity());
}

TEST_CASE("tower pullback difference acts blockwise as a cyclic difference") {
    TowerGraph t = make_tower(4);
    CubicalComplex cx = CubicalComplex::build(t.graph);
    IntMatrix one_minus =
        IntMatrix::identity(cx.count(1)) - cx.automorphism_action(t.cyclic, 1).transpose();
    // cochain a: ((1-beta^*) a)(e_{n,j}) = a_{n,j} - a_{n,j-1} with j-1 cyclic
    const KGraph& g = t.graph;
    auto idx = [&](int n, int j) {
        Cube c{{*g.edge_index("e" + std::to_string(n) + "_" + std::to_string(j))}, 0};
        c.vertex = g.edge(c.edges[0]).rng;
        return cx.cube_index(1, c);
    };
    for (int n = 1; n <= 3; ++n)
        for (int j = 1; j <= n; ++j) {
            IntVec row = one_minus.row(idx(n, j));
            for (std::size_t col = 0; col < row.size(); ++col) {
                Int expect = 0;
                if (static_cast<int>(col) == idx(n, j)) expect += 1;
                if (static_cast<int>(col) == idx(n, j == 1 ? n : j - 1)) expect -= 1;
                CHECK(row[col] == expect);
            }
        }
}

namespace {

// the 2x2 single-vertex graph with the antipodal bijection; its degree-1
// homology carries 2-torsion
KGraph antipodal_two_by_two() {
    std::vector<std::pair<int, int>> theta(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) theta[i * 2 + j] = {1 - i, 1 - j};
    return make_theta_graph(2, 2, theta);
}

}  // namespace

TEST_CASE("the antipodal 2x2 graph has torsion homology") {
    CubicalComplex cx = CubicalComplex::build(antipodal_two_by_two());
    CHECK(homology(cx, 0).describe() == "Z");
    CHECK(homology(cx, 1).describe() == "Z^2 + Z/2");
    CHECK(homology(cx, 2).describe() == "Z^2");
    // the torsion surfaces one degree up in integral cohomology
    CHECK(cohomology(cx, 2, CoeffGroup::integers()).group.describe() == "Z^2 + Z/2");
    // and in the circle-valued description of degree 1
    CohomValue h1t = cohomology(cx, 1, CoeffGroup::circle());
    CHECK(h1t.circ.circle_rank == 2);
    CHECK(h1t.circ.torsion == IntVec{2});
    CHECK(h1t.describe() == "T^2 + Z/2");
}

TEST_CASE("all 24 bijections of the 2x2 grid give consistent complexes") {
    std::vector<std::pair<int, int>> cells = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::vector<int> perm = {0, 1, 2, 3};
    do {
        std::vector<std::pair<int, int>> theta(4);
        for (int idx = 0; idx < 4; ++idx) theta[idx] = cells[perm[idx]];
        CubicalComplex cx = CubicalComplex::build(make_theta_graph(2, 2, theta));
        CHECK((cx.boundary(1) * cx.boundary(2)).is_zero());
        for (long m : {2, 3, 4, 12})
            for (int r = 0; r <= 2; ++r) {
                CoeffGroup zm = CoeffGroup::mod(m);
                CHECK(cohomology(cx, r, zm).group.same_iso_class(
                    cohomology_via_uct(cx, r, zm).group));
            }
        for (int r = 0; r <= 2; ++r) {
            FGAbGroup hr = cohomology(cx, r, CoeffGroup::integers()).group;
            CHECK(hr.free_rank() == homology(cx, r).free_rank());
            CHECK(hr.invariant_factors() ==
                  (r >= 1 ? homology(cx, r - 1).invariant_factors() : IntVec{}));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("coefficient parsing") {
    CHECK(CoeffGroup::parse("Z").describe() == "Z");
    CHECK(CoeffGroup::parse("Z/6").describe() == "Z/6");
    CHECK(CoeffGroup::parse("T").kind == CoeffGroup::Kind::Circle);
    CoeffGroup fg = CoeffGroup::parse("Z^2+Z/4");
    CHECK(fg.fg_rank == 2);
    CHECK(fg.fg_factors == IntVec{4});
    CHECK_THROWS(CoeffGroup::parse("Z/1"));
    CHECK_THROWS(CoeffGroup::parse("Q"));
}
