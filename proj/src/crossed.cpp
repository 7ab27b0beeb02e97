#include "kgl/crossed.hpp"

#include "kgl/errors.hpp"
#include "kgl/smith.hpp"

namespace kgl {

CrossedProduct crossed_product(const KGraph& g, const Automorphism& beta) {
    if (beta.vertex_map.size() != g.vertex_count() || beta.edge_map.size() != g.edge_count())
        throw Error("InvalidAutomorphism", "automorphism does not match the graph");
    const int k = g.rank();

    std::vector<std::string> vertices;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.vertex_id(static_cast<int>(v)));

    std::vector<EdgeSpec> edges;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& er = g.edge(static_cast<int>(e));
        edges.push_back(EdgeSpec{er.id, g.vertex_id(er.src), g.vertex_id(er.rng), er.color});
    }
    std::vector<std::string> zids;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::string id = "z_" + g.vertex_id(static_cast<int>(v));
        while (g.edge_index(id)) id += "'";
        zids.push_back(id);
        // range v, source beta^{-1}(v)
        edges.push_back(EdgeSpec{id, g.vertex_id(beta.vertex_inv[v]),
                                 g.vertex_id(static_cast<int>(v)), k + 1});
    }

    std::vector<SquareSpec> squares;
    for (const SquareRec& sq : g.squares())
        squares.push_back(SquareSpec{g.edge(sq.e).id, g.edge(sq.f).id, g.edge(sq.fp).id,
                                     g.edge(sq.ep).id});
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& er = g.edge(static_cast<int>(e));
        squares.push_back(SquareSpec{er.id, zids[er.src], zids[er.rng],
                                     g.edge(beta.edge_inv[e]).id});
    }

    CrossedProduct cp;
    cp.base = g;
    cp.beta = beta;
    cp.product = KGraph::from_parts(k + 1, vertices, edges, squares);

    cp.edge_base.assign(cp.product.edge_count(), -1);
    cp.edge_zvertex.assign(cp.product.edge_count(), -1);
    cp.base_edge_lift.assign(g.edge_count(), -1);
    cp.zedge_of_vertex.assign(g.vertex_count(), -1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int pe = *cp.product.edge_index(g.edge(static_cast<int>(e)).id);
        cp.edge_base[pe] = static_cast<int>(e);
        cp.base_edge_lift[e] = pe;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        int pe = *cp.product.edge_index(zids[v]);
        cp.edge_zvertex[pe] = static_cast<int>(v);
        cp.zedge_of_vertex[v] = pe;
    }

    cp.base_cx = CubicalComplex::build(g);
    cp.prod_cx = CubicalComplex::build(cp.product);
    return cp;
}

Cube CrossedProduct::lift_cube(const Cube& c, int ell) const {
    Cube out;
    out.vertex = c.vertex;  // product vertices mirror the base vertices
    for (int e : c.edges) out.edges.push_back(base_edge_lift[e]);
    if (ell == 1) {
        int src = c.edges.empty() ? c.vertex : base.edge(c.edges.back()).src;
        out.edges.push_back(zedge_of_vertex[src]);
        if (out.edges.size() == 1) out.vertex = src;  // the z-loop's range vertex
    }
    return out;
}

int CrossedProduct::lift_index(const Cube& c, int ell) const {
    return prod_cx.cube_index(static_cast<int>(c.dim()) + ell, lift_cube(c, ell));
}

CrossedProduct::Provenance CrossedProduct::classify_cube(const Cube& pc) const {
    Provenance p;
    std::vector<int> edges = pc.edges;
    p.ell = 0;
    if (!edges.empty() && edge_zvertex[edges.back()] >= 0) {
        p.ell = 1;
        edges.pop_back();
    }
    Cube b;
    for (int e : edges) {
        if (edge_base[e] < 0) throw Error("UnknownId", "misplaced z-edge inside a product cube");
        b.edges.push_back(edge_base[e]);
    }
    b.vertex = b.edges.empty()
                   ? (p.ell == 1 ? edge_zvertex[pc.edges.back()] : pc.vertex)
                   : base.edge(b.edges.front()).rng;
    p.base_cube = std::move(b);
    return p;
}

IntMatrix CrossedProduct::restriction_matrix(int r) const {
    IntMatrix m(base_cx.count(r), prod_cx.count(r));
    for (std::size_t i = 0; i < base_cx.count(r); ++i)
        m.at(i, lift_index(base_cx.cube_list(r)[i], 0)) = 1;
    return m;
}

IntMatrix CrossedProduct::inflation_matrix(int r) const {
    IntMatrix m(prod_cx.count(r), base_cx.count(r - 1));
    for (std::size_t j = 0; j < base_cx.count(r - 1); ++j)
        m.at(lift_index(base_cx.cube_list(r - 1)[j], 1), j) = 1;
    return m;
}

IntMatrix CrossedProduct::section_matrix(int r) const {
    IntMatrix m(prod_cx.count(r), base_cx.count(r));
    for (std::size_t j = 0; j < base_cx.count(r); ++j)
        m.at(lift_index(base_cx.cube_list(r)[j], 0), j) = 1;
    return m;
}

Json crossed_to_json(const CrossedProduct& cp) {
    Json j = skeleton_to_json(cp.product);
    Json base_edges = Json::object(), zloops = Json::object();
    for (std::size_t e = 0; e < cp.product.edge_count(); ++e) {
        const std::string& id = cp.product.edge(static_cast<int>(e)).id;
        if (cp.edge_base[e] >= 0)
            base_edges[id] = cp.base.edge(cp.edge_base[e]).id;
        else
            zloops[id] = cp.base.vertex_id(cp.edge_zvertex[e]);
    }
    j["provenance"] = Json{{"base_edge", base_edges}, {"z_loop_vertex", zloops}};
    return j;
}

std::string convention_name(ConnectingConvention c) {
    return c == ConnectingConvention::OneMinusBetaStar ? "1-beta*" : "delta_E";
}

GroupHom connecting_hom(const CrossedProduct& cp, int r, const Int& m,
                        ConnectingConvention conv) {
    const CubicalComplex& cx = cp.base_cx;
    IntMatrix t;
    if (conv == ConnectingConvention::OneMinusBetaStar) {
        t = IntMatrix::identity(cx.count(r)) - cx.automorphism_action(cp.beta, r).transpose();
    } else {
        IntMatrix inv_star = cx.automorphism_action(cp.beta.inverse(), r).transpose();
        t = IntMatrix::identity(cx.count(r)) - inv_star;
        if (r % 2 == 0) t = -t;  // (-1)^{r+1}
    }
    FGAbGroup h = cohomology_presented(cx, r, m);
    return induced_hom(t, h, h);
}

namespace {

struct NodeCheck {
    FGAbGroup group;
    ExactnessResult verdict;
};

std::vector<NodeCheck> les_one_summand(const CrossedProduct& cp, const Int& m,
                                       ConnectingConvention conv) {
    const int k = cp.base.rank();
    std::vector<FGAbGroup> hb(k + 1), hx(k + 2);
    for (int r = 0; r <= k; ++r) hb[r] = cohomology_presented(cp.base_cx, r, m);
    for (int r = 0; r <= k + 1; ++r) hx[r] = cohomology_presented(cp.prod_cx, r, m);

    std::vector<GroupHom> i_star(k + 1), conn(k + 1), j_star(k + 1);
    for (int r = 0; r <= k; ++r) {
        i_star[r] = induced_hom(cp.restriction_matrix(r), hx[r], hb[r]);
        conn[r] = connecting_hom(cp, r, m, conv);
        j_star[r] = induced_hom(cp.inflation_matrix(r + 1), hb[r], hx[r + 1]);
    }

    std::vector<NodeCheck> nodes;
    FGAbGroup zero = FGAbGroup::zero();
    for (int r = 0; r <= k; ++r) {
        GroupHom in = r == 0 ? GroupHom::zero(zero, hx[0]) : j_star[r - 1];
        nodes.push_back(NodeCheck{hx[r], check_exact(in, i_star[r])});
        nodes.push_back(NodeCheck{hb[r], check_exact(i_star[r], conn[r])});
        nodes.push_back(NodeCheck{hb[r], check_exact(conn[r], j_star[r])});
    }
    nodes.push_back(NodeCheck{hx[k + 1], check_exact(j_star[k], GroupHom::zero(hx[k + 1], zero))});
    return nodes;
}

}  // namespace

LesReport assemble_les(const CrossedProduct& cp, const CoeffGroup& coeff,
                       ConnectingConvention conv) {
    if (coeff.kind == CoeffGroup::Kind::Circle)
        throw Error("InvalidCoefficient", "exactness over the circle group is not supported");
    const int k = cp.base.rank();
    LesReport rep;
    rep.coeff = coeff.describe();
    rep.convention = conv;

    std::vector<std::vector<NodeCheck>> runs;
    for (const auto& m : coeff.cyclic_summands()) runs.push_back(les_one_summand(cp, m, conv));

    const std::size_t n_nodes = runs.front().size();
    rep.all_exact = true;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        LesNode node;
        int r = static_cast<int>(i) / 3;
        int slot = static_cast<int>(i) % 3;
        if (i + 1 == n_nodes) {
            node.label = "H^" + std::to_string(k + 1) + "(product)";
            node.incoming = "j*";
            node.outgoing = "0";
        } else if (slot == 0) {
            node.label = "H^" + std::to_string(r) + "(product)";
            node.incoming = r == 0 ? "0" : "j*";
            node.outgoing = "i*";
        } else if (slot == 1) {
            node.label = "H^" + std::to_string(r) + "(base)";
            node.incoming = "i*";
            node.outgoing = convention_name(conv);
        } else {
            node.label = "H^" + std::to_string(r) + "(base)";
            node.incoming = convention_name(conv);
            node.outgoing = "j*";
        }
        FGAbGroup sum = FGAbGroup::zero();
        ExactnessResult verdict;
        verdict.exact = true;
        verdict.detail = "im = ker";
        for (const auto& run : runs) {
            sum = direct_sum(sum, run[i].group);
            if (!run[i].verdict.exact && verdict.exact) verdict = run[i].verdict;
        }
        node.group = sum.describe();
        node.verdict = verdict;
        rep.nodes.push_back(std::move(node));
        if (!verdict.exact) rep.all_exact = false;
    }
    return rep;
}

FGAbGroup homology_via_les(const CrossedProduct& cp, int n) {
    // 0 -> coker(1-beta_* | H_n) -> H_n(product) -> ker(1-beta_* | H_{n-1}) -> 0
    FGAbGroup hn = homology(cp.base_cx, n);
    IntMatrix p = cp.base_cx.automorphism_action(cp.beta, n);
    FGAbGroup coker = cokernel_group(induced_hom(IntMatrix::identity(p.rows()) - p, hn, hn));
    FGAbGroup ker = FGAbGroup::zero();
    if (n >= 1) {
        FGAbGroup hprev = homology(cp.base_cx, n - 1);
        IntMatrix q = cp.base_cx.automorphism_action(cp.beta, n - 1);
        ker = kernel_group(induced_hom(IntMatrix::identity(q.rows()) - q, hprev, hprev));
        if (!ker.invariant_factors().empty())
            throw Error("LesIndeterminate",
                        "kernel of 1-beta_* has torsion; the extension is not determined");
    }
    return direct_sum(coker, ker);
}

}  // namespace kgl
