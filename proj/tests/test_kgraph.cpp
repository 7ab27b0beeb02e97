#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgl/errors.hpp"
#include "kgl/kgraph.hpp"

using namespace kgl;

namespace {

KGraph two_by_three() { return make_theta_graph(2, 3, theta_cyclic(2, 3)); }

std::vector<SquareSpec> two_by_three_squares() {
    std::vector<SquareSpec> s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            s.push_back(SquareSpec{"f" + std::to_string(i), "g" + std::to_string(j),
                                   "g" + std::to_string((j + 1) % 3),
                                   "f" + std::to_string((i + 1) % 2)});
    return s;
}

int edge(const KGraph& g, const std::string& id) { return *g.edge_index(id); }

}  // namespace

TEST_CASE("bouquet builder") {
    KGraph b2 = make_bouquet(2);
    CHECK(b2.rank() == 1);
    CHECK(b2.vertex_count() == 1);
    CHECK(b2.edge_count() == 2);
    CHECK_THROWS_AS(make_bouquet(0), Error);
}

TEST_CASE("theta graph builder and the six relation squares") {
    KGraph g = two_by_three();
    CHECK(g.rank() == 2);
    CHECK(g.edge_count() == 5);
    CHECK(g.squares().size() == 6);
    // f0 g0 = g1 f1
    const SquareRec* sq = g.left_square(edge(g, "f0"), edge(g, "g0"));
    REQUIRE(sq != nullptr);
    CHECK(g.edge(sq->fp).id == "g1");
    CHECK(g.edge(sq->ep).id == "f1");
    // f1 g2 = g0 f0
    sq = g.left_square(edge(g, "f1"), edge(g, "g2"));
    REQUIRE(sq != nullptr);
    CHECK(g.edge(sq->fp).id == "g0");
    CHECK(g.edge(sq->ep).id == "f0");
}

TEST_CASE("theta builder rejects non-bijections") {
    auto theta = theta_cyclic(2, 2);
    theta[0] = theta[1];
    CHECK_THROWS_AS(make_theta_graph(2, 2, theta), Error);
}

TEST_CASE("identity theta graphs") {
    KGraph one = make_theta_graph(1, 1, theta_cyclic(1, 1));
    CHECK(one.squares().size() == 1);  // fg = gf
    const SquareRec& sq = one.squares()[0];
    CHECK(one.edge(sq.e).id == "f0");
    CHECK(one.edge(sq.ep).id == "f0");

    std::vector<std::pair<int, int>> ident(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ident[i * 2 + j] = {i, j};
    KGraph four = make_theta_graph(2, 2, ident);
    CHECK(four.squares().size() == 4);
    for (const SquareRec& s : four.squares()) {
        CHECK(s.e == s.ep);  // f_i g_j = g_j f_i
        CHECK(s.f == s.fp);
    }
}

TEST_CASE("missing square is rejected as incomplete") {
    auto squares = two_by_three_squares();
    squares.erase(squares.begin());  // drop f0 g0 = g1 f1
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 2; ++i) edges.push_back({"f" + std::to_string(i), "v", "v", 1});
    for (int j = 0; j < 3; ++j) edges.push_back({"g" + std::to_string(j), "v", "v", 2});
    try {
        KGraph::from_parts(2, {"v"}, edges, squares);
        FAIL("expected SquareIncomplete");
    } catch (const Error& e) {
        CHECK(e.code() == "SquareIncomplete");
    }
}

TEST_CASE("duplicate and mistyped squares are rejected") {
    std::vector<EdgeSpec> edges = {{"f0", "v", "v", 1}, {"g0", "v", "v", 2}};
    // ambiguous: same left pair twice
    std::vector<SquareSpec> twice = {{"f0", "g0", "g0", "f0"}, {"f0", "g0", "g0", "f0"}};
    try {
        KGraph::from_parts(2, {"v"}, edges, twice);
        FAIL("expected SquareAmbiguous");
    } catch (const Error& e) {
        CHECK(e.code() == "SquareAmbiguous");
    }
    // mistyped: colors wrong way round
    std::vector<SquareSpec> wrong = {{"g0", "f0", "f0", "g0"}};
    try {
        KGraph::from_parts(2, {"v"}, edges, wrong);
        FAIL("expected SquareTypingError");
    } catch (const Error& e) {
        CHECK(e.code() == "SquareTypingError");
    }
}

TEST_CASE("duplicate ids are rejected") {
    CHECK_THROWS_AS(KGraph::from_parts(1, {"v", "v"}, {}, {}), Error);
}

TEST_CASE("rank-3 skeletons must resolve triples consistently") {
    // one vertex; single edges a, b in colors 1, 2; three color-3 loops.
    // mixing a (01)-shift against a (012)-shift cannot satisfy the triple
    // condition because the two permutations do not commute.
    std::vector<EdgeSpec> edges = {{"a", "v", "v", 1}, {"b", "v", "v", 2}};
    for (int i = 0; i < 3; ++i) edges.push_back({"c" + std::to_string(i), "v", "v", 3});
    auto build = [&](std::array<int, 3> sigma, std::array<int, 3> tau) {
        std::vector<SquareSpec> squares = {{"a", "b", "b", "a"}};
        for (int i = 0; i < 3; ++i) {
            squares.push_back({"a", "c" + std::to_string(i),
                               "c" + std::to_string(sigma[i]), "a"});
            squares.push_back({"b", "c" + std::to_string(i),
                               "c" + std::to_string(tau[i]), "b"});
        }
        return KGraph::from_parts(3, {"v"}, edges, squares);
    };
    // commuting shifts are fine
    KGraph ok = build({1, 2, 0}, {2, 0, 1});
    CHECK(ok.rank() == 3);
    CHECK(ok.cubes(3).size() == 3);
    try {
        build({1, 0, 2}, {1, 2, 0});
        FAIL("expected AssociativityViolation");
    } catch (const Error& e) {
        CHECK(e.code() == "AssociativityViolation");
    }
}

TEST_CASE("shuffle rejects bad inputs") {
    KGraph g = two_by_three();
    std::vector<int> fg = {edge(g, "f0"), edge(g, "g0")};
    CHECK_THROWS_AS(g.shuffle(fg, {1, 1}), Error);     // not a permutation of the colors
    CHECK_THROWS_AS(g.shuffle(fg, {1}), Error);        // wrong length
    std::vector<int> ff = {edge(g, "f0"), edge(g, "f0")};
    CHECK_THROWS_AS(g.shuffle(ff, {1, 1}), Error);     // repeated colors unsupported
}

TEST_CASE("tower builder") {
    TowerGraph t4 = make_tower(4);
    CHECK(t4.graph.vertex_count() == 4);
    CHECK(t4.graph.edge_count() == 6);  // 1 + 2 + 3
    CHECK(t4.graph.has_sources());      // the top vertex receives nothing
    CHECK(t4.graph.row_finite());
    CHECK_FALSE(make_theta_graph(2, 3, theta_cyclic(2, 3)).has_sources());
    CHECK_THROWS_AS(make_tower(1), Error);

    TowerGraph t2 = make_tower(2);
    CHECK(t2.graph.edge_count() == 1);
    CHECK(t2.cyclic.is_identity());  // the single level-1 edge is fixed
}

TEST_CASE("shuffle applies the factorization rules") {
    KGraph g = two_by_three();
    std::vector<int> fg = {edge(g, "f0"), edge(g, "g0")};
    auto swapped = g.shuffle(fg, {2, 1});
    CHECK(g.edge(swapped[0]).id == "g1");
    CHECK(g.edge(swapped[1]).id == "f1");
    CHECK(g.shuffle(fg, {1, 2}) == fg);  // identity order

    // round trip over every 2-cube
    for (const Cube& c : g.cubes(2)) {
        auto back = g.shuffle(g.shuffle(c.edges, {2, 1}), {1, 2});
        CHECK(back == c.edges);
    }
}

TEST_CASE("cube enumeration counts") {
    KGraph g = two_by_three();
    CHECK(g.cubes(0).size() == 1);
    CHECK(g.cubes(1).size() == 5);
    CHECK(g.cubes(2).size() == 6);
    CHECK(g.cubes(3).empty());

    KGraph b3 = make_bouquet(3);
    CHECK(b3.cubes(1).size() == 3);
    CHECK(b3.cubes(2).empty());  // one color only
}

TEST_CASE("cube enumeration is duplicate-free and canonical") {
    KGraph g = two_by_three();
    auto q2 = g.cubes(2);
    for (std::size_t i = 0; i < q2.size(); ++i)
        for (std::size_t j = i + 1; j < q2.size(); ++j) CHECK_FALSE(q2[i] == q2[j]);
    for (const Cube& c : q2) CHECK(g.canonical_cube(g.shuffle(c.edges, {2, 1})) == c);
}

TEST_CASE("faces of the relation square f0 g0") {
    KGraph g = two_by_three();
    Cube c = g.canonical_cube({edge(g, "f0"), edge(g, "g0")});
    CHECK(g.edge(g.face(c, 1, 1).edges[0]).id == "g0");
    CHECK(g.edge(g.face(c, 1, 0).edges[0]).id == "g1");
    CHECK(g.edge(g.face(c, 2, 0).edges[0]).id == "f0");
    CHECK(g.edge(g.face(c, 2, 1).edges[0]).id == "f1");
    CHECK_THROWS_AS(g.face(c, 3, 0), Error);
}

TEST_CASE("faces of an edge are its range and source") {
    TowerGraph t = make_tower(3);
    const KGraph& g = t.graph;
    Cube e = g.canonical_cube({edge(g, "e2_1")});
    Cube f0 = g.face(e, 1, 0), f1 = g.face(e, 1, 1);
    CHECK(f0.dim() == 0);
    CHECK(g.vertex_id(f0.vertex) == "v2");  // range
    CHECK(g.vertex_id(f1.vertex) == "v3");  // source
}

TEST_CASE("automorphism validation") {
    KGraph g = two_by_three();
    // the commuting pair: f-swap with g-cycle
    std::vector<int> emap = {edge(g, "f1"), edge(g, "f0"), edge(g, "g1"), edge(g, "g2"),
                             edge(g, "g0")};
    Automorphism beta = Automorphism::build(g, {0}, emap);
    CHECK_FALSE(beta.is_identity());
    CHECK(beta.inverse().edge_map[edge(g, "f1")] == edge(g, "f0"));

    // transposing g0 and g1 is not compatible with the squares
    std::vector<int> bad = {edge(g, "f0"), edge(g, "f1"), edge(g, "g1"), edge(g, "g0"),
                            edge(g, "g2")};
    CHECK_THROWS_AS(Automorphism::build(g, {0}, bad), Error);
}

TEST_CASE("automorphism search: bouquets give all permutations") {
    CHECK(enumerate_automorphisms(make_bouquet(2)).size() == 2);
    CHECK(enumerate_automorphisms(make_bouquet(3)).size() == 6);
    CHECK(enumerate_automorphisms(make_bouquet(4)).size() == 24);
}

TEST_CASE("automorphism search: the 2x3 graph has exactly the 6 torus translations") {
    KGraph g = two_by_three();
    auto autos = enumerate_automorphisms(g);
    CHECK(autos.size() == 6);
}

TEST_CASE("automorphism equivariance of faces") {
    KGraph g = two_by_three();
    std::vector<int> emap = {edge(g, "f1"), edge(g, "f0"), edge(g, "g1"), edge(g, "g2"),
                             edge(g, "g0")};
    Automorphism beta = Automorphism::build(g, {0}, emap);
    for (int r = 1; r <= 2; ++r)
        for (const Cube& c : g.cubes(r))
            for (int j = 1; j <= r; ++j)
                for (int ell = 0; ell <= 1; ++ell)
                    CHECK(g.face(beta.apply(c), j, ell) == beta.apply(g.face(c, j, ell)));
}

TEST_CASE("aperiodicity verdicts") {
    KGraph g = two_by_three();
    CHECK(check_aperiodicity(g, {4, 4}).verified());

    KGraph b1 = make_bouquet(1);
    auto v = check_aperiodicity(b1, {3});
    CHECK(v.status == BoundedVerdict::Status::Inconclusive);

    CHECK(check_aperiodicity(make_bouquet(2), {3}).verified());
}

TEST_CASE("cofinality verdicts") {
    CHECK(check_cofinality(two_by_three(), {2, 2}).verified());
    CHECK(check_cofinality(make_tower(4).graph, {4}).verified());

    // two disjoint loops can never reach each other
    std::vector<EdgeSpec> edges = {{"a", "u", "u", 1}, {"b", "w", "w", 1}};
    KGraph disjoint = KGraph::from_parts(1, {"u", "w"}, edges, {});
    auto v = check_cofinality(disjoint, {3});
    CHECK(v.status == BoundedVerdict::Status::Inconclusive);
}

TEST_CASE("single-vertex graphs are cofinal at degree zero") {
    auto v = check_cofinality(two_by_three(), {1, 1});
    CHECK(v.verified());
    CHECK(v.witness == "largest |N| used: 0");
}

TEST_CASE("path segments factor correctly") {
    KGraph g = two_by_three();
    // the path f0 g0 = g1 f1: lambda(0, e1) = f0, lambda(e1, (1,1)) = g0
    Path p = normal_form(g, {edge(g, "f0"), edge(g, "g0")}, 0);
    Path front = path_segment(g, p, {0, 0}, {1, 0});
    REQUIRE(front.edges.size() == 1);
    CHECK(g.edge(front.edges[0]).id == "f0");
    Path back = path_segment(g, p, {1, 0}, {1, 1});
    REQUIRE(back.edges.size() == 1);
    CHECK(g.edge(back.edges[0]).id == "g0");
    // factoring red-first picks out the other factorization
    Path red = path_segment(g, p, {0, 0}, {0, 1});
    CHECK(g.edge(red.edges[0]).id == "g1");
}

TEST_CASE("morphism enumeration counts for the 2x3 graph") {
    KGraph g = two_by_three();
    auto all = morphisms_from(g, 0, {2, 2});
    // sum over a,b <= 2 of 2^a 3^b = (1+2+4)(1+3+9) = 91
    CHECK(all.size() == 91);
    auto exact = morphisms_from(g, 0, {2, 2}, true);
    CHECK(exact.size() == 36);  // 2^2 * 3^2
}
