#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgl/crossed.hpp"
#include "kgl/skeleton_io.hpp"
#include "kgl/twist.hpp"

using namespace kgl;

namespace {

KGraph two_by_three() { return make_theta_graph(2, 3, theta_cyclic(2, 3)); }

}  // namespace

TEST_CASE("skeleton json round trip") {
    KGraph g = two_by_three();
    Json j = skeleton_to_json(g);
    KGraph back = skeleton_from_json(j);
    CHECK(back.rank() == g.rank());
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(back.squares().size() == g.squares().size());
    CHECK(skeleton_to_json(back) == j);
}

TEST_CASE("skeleton json validates fields") {
    Json j = Json::object();
    CHECK_THROWS_AS(skeleton_from_json(j), Error);
    j["rank"] = 1;
    j["vertices"] = Json::array({"v"});
    j["edges"] = Json::array({Json{{"id", "e"}, {"color", 1}, {"src", "v"}, {"rng", "w"}}});
    try {
        skeleton_from_json(j);
        FAIL("expected UnknownId");
    } catch (const Error& e) {
        CHECK(e.code() == "UnknownId");
    }
}

TEST_CASE("automorphism json round trip") {
    KGraph g = two_by_three();
    auto e = [&](const char* id) { return *g.edge_index(id); };
    Automorphism beta =
        Automorphism::build(g, {0}, {e("f1"), e("f0"), e("g1"), e("g2"), e("g0")});
    Json j = automorphism_to_json(g, beta);
    Automorphism back = automorphism_from_json(g, j);
    CHECK(back.edge_map == beta.edge_map);
    CHECK(back.vertex_map == beta.vertex_map);
    // unmapped edge is rejected
    j["edge_map"].erase("f0");
    CHECK_THROWS_AS(automorphism_from_json(g, j), Error);
}

TEST_CASE("dot export uses the drawing conventions") {
    CrossedProduct cp = [] {
        KGraph g = two_by_three();
        auto e = [&](const char* id) { return *g.edge_index(id); };
        Automorphism beta =
            Automorphism::build(g, {0}, {e("f1"), e("f0"), e("g1"), e("g2"), e("g0")});
        return crossed_product(g, beta);
    }();
    std::string dot = dot_export(cp.product);
    CHECK(dot.find("style=solid, color=blue") != std::string::npos);
    CHECK(dot.find("style=dashed, color=red") != std::string::npos);
    CHECK(dot.find("style=dotted, color=darkgreen") != std::string::npos);
    CHECK(dot.find("digraph skeleton") != std::string::npos);
}

TEST_CASE("cochain json round trip") {
    KGraph g = two_by_three();
    CubicalComplex cx = CubicalComplex::build(g);
    PhaseCochain f = zero_cochain(cx, 2, 2);
    f.values[0] = Phase::parse("1/3 + 2*t1", 2);
    f.values[3] = Phase::parse("-1/2*t2", 2);
    Json j = cochain_to_json(cx, f);
    CHECK(j["degree"] == 2);
    PhaseCochain back = cochain_from_json(cx, j, 2);
    CHECK(back == f);
    // unknown cube label rejected
    j["values"]["nope"] = "0";
    CHECK_THROWS_AS(cochain_from_json(cx, j, 2), Error);
}

TEST_CASE("cochain json accepts sparse values") {
    KGraph g = make_bouquet(3);
    CubicalComplex cx = CubicalComplex::build(g);
    Json j;
    j["degree"] = 1;
    j["values"] = Json{{"f1", "1/2"}};
    PhaseCochain f = cochain_from_json(cx, j, 0);
    CHECK(f.values[0] == Phase::from_turn(Rat(1, 2), 0));
    CHECK(f.values[1].is_zero());
}

TEST_CASE("crossed product json includes provenance and parses as a skeleton") {
    KGraph b2 = make_bouquet(2);
    CrossedProduct cp = crossed_product(b2, Automorphism::identity(b2));
    Json j = crossed_to_json(cp);
    CHECK(j["provenance"]["base_edge"].size() == 2);
    CHECK(j["provenance"]["z_loop_vertex"].size() == 1);
    KGraph back = skeleton_from_json(j);
    CHECK(back.rank() == 2);
}
