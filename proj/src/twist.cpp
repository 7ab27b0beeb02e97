#include "kgl/twist.hpp"

#include "kgl/errors.hpp"
#include "kgl/smith.hpp"

namespace kgl {

namespace {

RatVec apply_rat(const IntMatrix& m, const RatVec& v) {
    RatVec out(m.rows(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) out[i] += Rat(m.at(i, j)) * v[j];
    return out;
}

void check_degree(const CubicalComplex& cx, const PhaseCochain& f) {
    if (f.values.size() != cx.count(f.degree))
        throw Error("DegreeMismatch", "cochain values do not match Q_" +
                                          std::to_string(f.degree));
}

}  // namespace

bool PhaseCochain::is_zero() const {
    for (const auto& p : values)
        if (!p.is_zero()) return false;
    return true;
}

PhaseCochain zero_cochain(const CubicalComplex& cx, int degree, std::size_t generators) {
    PhaseCochain f;
    f.degree = degree;
    f.generators = generators;
    f.values.assign(cx.count(degree), Phase(generators));
    return f;
}

PhaseCochain cochain_add(const PhaseCochain& a, const PhaseCochain& b) {
    if (a.degree != b.degree || a.values.size() != b.values.size())
        throw Error("DegreeMismatch", "cochain sum degree mismatch");
    PhaseCochain out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = out.values[i] + b.values[i];
    return out;
}

PhaseCochain cochain_sub(const PhaseCochain& a, const PhaseCochain& b) {
    if (a.degree != b.degree || a.values.size() != b.values.size())
        throw Error("DegreeMismatch", "cochain difference degree mismatch");
    PhaseCochain out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = out.values[i] - b.values[i];
    return out;
}

PhaseCochain coboundary(const CubicalComplex& cx, const PhaseCochain& f) {
    check_degree(cx, f);
    IntMatrix d = cx.coboundary(f.degree);  // count(r+1) x count(r)
    PhaseCochain out;
    out.degree = f.degree + 1;
    out.generators = f.generators;
    out.values.assign(d.rows(), Phase(f.generators));
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (d.at(i, j) != 0)
                out.values[i] = out.values[i] + f.values[j].scaled(d.at(i, j));
    return out;
}

bool is_cocycle(const CubicalComplex& cx, const PhaseCochain& f) {
    return coboundary(cx, f).is_zero();
}

std::optional<PhaseCochain> coboundary_preimage(const CubicalComplex& cx, const PhaseCochain& f) {
    check_degree(cx, f);
    if (f.degree < 1) return std::nullopt;  // nothing maps into degree 0
    IntMatrix d = cx.coboundary(f.degree - 1);  // count(r) x count(r-1)
    Smith s = smith_normal_form(d);
    const std::size_t rows = d.rows(), cols = d.cols();

    PhaseCochain b;
    b.degree = f.degree - 1;
    b.generators = f.generators;
    b.values.assign(cols, Phase(f.generators));

    // turn coordinate: solve d x = t (mod 1); rows past the rank obstruct
    {
        RatVec t(rows);
        for (std::size_t i = 0; i < rows; ++i) t[i] = f.values[i].turn;
        RatVec ut = apply_rat(s.U, t);
        RatVec z(cols, Rat(0));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i < s.rank) {
                z[i] = ut[i] / Rat(s.diagonal[i]);
            } else if (rat_mod1(ut[i]) != Rat(0)) {
                return std::nullopt;
            }
        }
        RatVec x = apply_rat(s.V, z);
        for (std::size_t j = 0; j < cols; ++j) b.values[j].turn = rat_mod1(x[j]);
    }
    // each free generator coordinate: solve d x = v exactly over Q
    for (std::size_t l = 0; l < f.generators; ++l) {
        RatVec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = f.values[i].free_part[l];
        RatVec uv = apply_rat(s.U, v);
        RatVec z(cols, Rat(0));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i < s.rank) {
                z[i] = uv[i] / Rat(s.diagonal[i]);
            } else if (uv[i] != Rat(0)) {
                return std::nullopt;
            }
        }
        RatVec x = apply_rat(s.V, z);
        for (std::size_t j = 0; j < cols; ++j) b.values[j].free_part[l] = x[j];
    }
    return b;
}

PhaseCochain pullback_cochain(const CubicalComplex& cx, const Automorphism& a,
                              const PhaseCochain& f) {
    check_degree(cx, f);
    PhaseCochain out = f;
    const auto& cubes = cx.cube_list(f.degree);
    for (std::size_t i = 0; i < cubes.size(); ++i)
        out.values[i] = f.values[cx.cube_index(f.degree, a.apply(cubes[i]))];
    return out;
}

CocycleSpace cocycle_space(const CubicalComplex& cx, int r) {
    CocycleSpace space;
    IntMatrix d = cx.coboundary(r);
    space.kernel = kernel_basis(d);
    Smith s = smith_normal_form(d);
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.diagonal[i] < 2) continue;
        RatVec gen(d.cols(), Rat(0));
        for (std::size_t row = 0; row < d.cols(); ++row)
            gen[row] = rat_mod1(Rat(s.V.at(row, i), s.diagonal[i]));
        space.torsion.emplace_back(std::move(gen), s.diagonal[i]);
    }
    return space;
}

PhaseCochain restrict_to_base(const CrossedProduct& cp, const PhaseCochain& f) {
    check_degree(cp.prod_cx, f);
    PhaseCochain out;
    out.degree = f.degree;
    out.generators = f.generators;
    const auto& cubes = cp.base_cx.cube_list(f.degree);
    out.values.reserve(cubes.size());
    for (const Cube& c : cubes) out.values.push_back(f.values[cp.lift_index(c, 0)]);
    return out;
}

PhaseCochain inflate_from_base(const CrossedProduct& cp, const PhaseCochain& f) {
    check_degree(cp.base_cx, f);
    PhaseCochain out = zero_cochain(cp.prod_cx, f.degree + 1, f.generators);
    const auto& cubes = cp.base_cx.cube_list(f.degree);
    for (std::size_t i = 0; i < cubes.size(); ++i)
        out.values[cp.lift_index(cubes[i], 1)] = f.values[i];
    return out;
}

PhaseCochain section_to_product(const CrossedProduct& cp, const PhaseCochain& f) {
    check_degree(cp.base_cx, f);
    PhaseCochain out = zero_cochain(cp.prod_cx, f.degree, f.generators);
    const auto& cubes = cp.base_cx.cube_list(f.degree);
    for (std::size_t i = 0; i < cubes.size(); ++i)
        out.values[cp.lift_index(cubes[i], 0)] = f.values[i];
    return out;
}

PhaseCochain pair_cochain(const CrossedProduct& cp, const PhaseCochain& lower,
                          const PhaseCochain& upper) {
    if (!cp.beta.is_identity())
        throw Error("BetaNotIdentity", "the pairing applies to trivial twists only");
    if (lower.degree + 1 != upper.degree)
        throw Error("DegreeMismatch", "pair needs degrees r and r+1");
    return cochain_add(inflate_from_base(cp, lower), section_to_product(cp, upper));
}

std::pair<PhaseCochain, PhaseCochain> split_pair_cochain(const CrossedProduct& cp,
                                                         const PhaseCochain& h) {
    if (!cp.beta.is_identity())
        throw Error("BetaNotIdentity", "the pairing applies to trivial twists only");
    check_degree(cp.prod_cx, h);
    if (h.degree < 1) throw Error("DegreeMismatch", "cannot split a 0-cochain");
    PhaseCochain lower, upper;
    lower.degree = h.degree - 1;
    lower.generators = h.generators;
    upper.degree = h.degree;
    upper.generators = h.generators;
    for (const Cube& c : cp.base_cx.cube_list(h.degree - 1))
        lower.values.push_back(h.values[cp.lift_index(c, 1)]);
    for (const Cube& c : cp.base_cx.cube_list(h.degree))
        upper.values.push_back(h.values[cp.lift_index(c, 0)]);
    return {lower, upper};
}

TwistTable twist_table(const CrossedProduct& cp, const PhaseCochain& phi) {
    if (phi.degree != 2) throw Error("DegreeMismatch", "twist data needs a 2-cochain");
    if (!is_cocycle(cp.prod_cx, phi))
        throw Error("NotACocycle", "twist data requires a 2-cocycle on the product");
    TwistTable t;
    const std::size_t ne = cp.base.edge_count();
    t.phase.reserve(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        int be = cp.beta.edge_map[e];
        Cube c{{be}, cp.base.edge(be).rng};
        t.phase.push_back(phi.values[cp.lift_index(c, 1)]);
        t.target_edge.push_back(be);
        Cube ce{{static_cast<int>(e)}, cp.base.edge(static_cast<int>(e)).rng};
        t.inv_phase.push_back(-phi.values[cp.lift_index(ce, 1)]);
        t.inv_target_edge.push_back(cp.beta.edge_inv[e]);
    }
    return t;
}

SquareCheck twist_square_residues(const CrossedProduct& cp, const PhaseCochain& phi) {
    if (phi.degree != 2) throw Error("DegreeMismatch", "residues need a 2-cochain");
    SquareCheck check;
    const auto& squares = cp.base_cx.cube_list(2);
    auto phase_at = [&](const Cube& c, int ell) { return phi.values[cp.lift_index(c, ell)]; };
    for (const Cube& s : squares) {
        int e = s.edges[0], f = s.edges[1];
        std::vector<int> colors = cp.base.cube_colors(s);
        std::vector<int> other = cp.base.shuffle(s.edges, {colors[1], colors[0]});
        int fprime = other[0], eprime = other[1];
        Cube bs = cp.beta.apply(s);
        auto edge_cube = [&](int edge) {
            return Cube{{edge}, cp.base.edge(edge).rng};
        };
        Phase residue = phase_at(s, 0) - phase_at(bs, 0) -
                        phase_at(edge_cube(cp.beta.edge_map[fprime]), 1) +
                        phase_at(edge_cube(cp.beta.edge_map[e]), 1) -
                        phase_at(edge_cube(cp.beta.edge_map[eprime]), 1) +
                        phase_at(edge_cube(cp.beta.edge_map[f]), 1);
        if (!residue.is_zero()) check.ok = false;
        check.residues.push_back(std::move(residue));
    }
    return check;
}

PhaseCochain lift_invariant_cocycle(const CrossedProduct& cp, const PhaseCochain& psi) {
    if (psi.degree != 2) throw Error("DegreeMismatch", "lift needs a 2-cocycle on the base");
    if (!is_cocycle(cp.base_cx, psi))
        throw Error("NotACocycle", "lift input must be a 2-cocycle");
    PhaseCochain diff = cochain_sub(pullback_cochain(cp.base_cx, cp.beta, psi), psi);
    std::optional<PhaseCochain> b;
    if (auto x = coboundary_preimage(cp.base_cx, psi)) {
        // when psi itself trivializes, beta^* x - x is a witness compatible
        // with that trivialization (the lift then trivializes too)
        b = cochain_sub(pullback_cochain(cp.base_cx, cp.beta, *x), *x);
    } else {
        b = coboundary_preimage(cp.base_cx, diff);
    }
    if (!b)
        throw Error("ClassNotInvariant",
                    "beta^* psi - psi is not a coboundary; the class is not invariant");

    PhaseCochain phi = zero_cochain(cp.prod_cx, 2, psi.generators);
    const auto& sq = cp.base_cx.cube_list(2);
    for (std::size_t i = 0; i < sq.size(); ++i) phi.values[cp.lift_index(sq[i], 0)] = psi.values[i];
    const auto& ed = cp.base_cx.cube_list(1);
    for (std::size_t i = 0; i < ed.size(); ++i) {
        Cube pre = cp.beta.apply_inverse(ed[i]);
        phi.values[cp.lift_index(ed[i], 1)] = b->values[cp.base_cx.cube_index(1, pre)];
    }

    if (!is_cocycle(cp.prod_cx, phi) || !(restrict_to_base(cp, phi) == psi))
        throw Error("PostconditionFailed", "lifted cochain is not a compatible cocycle");
    return phi;
}

Json cochain_to_json(const CubicalComplex& cx, const PhaseCochain& f) {
    Json j;
    j["degree"] = f.degree;
    j["generators"] = f.generators;
    Json values = Json::object();
    const auto& cubes = cx.cube_list(f.degree);
    for (std::size_t i = 0; i < cubes.size(); ++i)
        values[cx.graph().cube_label(cubes[i])] = f.values[i].format();
    j["values"] = std::move(values);
    return j;
}

PhaseCochain cochain_from_json(const CubicalComplex& cx, const Json& j, std::size_t generators) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
        throw Error("ParseError", "cochain file needs 'degree' and 'values'");
    int degree = j["degree"].get<int>();
    std::size_t g = generators;
    if (j.contains("generators")) g = std::max<std::size_t>(g, j["generators"].get<std::size_t>());
    PhaseCochain f = zero_cochain(cx, degree, g);
    const auto& cubes = cx.cube_list(degree);
    std::map<std::string, int> by_label;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        auto [it, fresh] = by_label.emplace(cx.graph().cube_label(cubes[i]), static_cast<int>(i));
        if (!fresh) throw Error("DuplicateCubeId", "two cubes share the label '" + it->first + "'");
    }
    for (const auto& [label, text] : j["values"].items()) {
        auto it = by_label.find(label);
        if (it == by_label.end())
            throw Error("ParseError", "cochain value names unknown cube '" + label + "'");
        f.values[it->second] = Phase::parse(text.get<std::string>(), g);
    }
    return f;
}

}  // namespace kgl
