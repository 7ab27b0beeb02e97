// kgraphlab: command-line workbench for higher-rank graph skeletons, their
// cubical (co)homology, crossed products by automorphisms and exact
// circle-valued cochain computations.
//
// Exit codes: 0 success / verified, 1 verified-false, 2 invalid input.
// Reports go to stdout; -o writes the bare payload (skeleton, cochain, DOT)
// so commands compose: `kgraphlab gen theta 2 3 cyclic | kgraphlab homology`.
#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "kgl/acceptance.hpp"
#include "kgl/crossed.hpp"
#include "kgl/skeleton_io.hpp"
#include "kgl/twist.hpp"

using namespace kgl;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int thread_cap() {
    const char* env = std::getenv("KGRAPHLAB_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

struct Session {
    std::vector<std::string> argv;
    Json inputs = Json::object();
    std::string out_path;

    Json file_input(const std::string& path) {
        std::string bytes;
        if (path == "-") {
            bytes.assign(std::istreambuf_iterator<char>(std::cin),
                         std::istreambuf_iterator<char>());
        } else {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw Error("ParseError", "cannot open file '" + path + "'");
            bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        inputs[path == "-" ? "<stdin>" : path] = hex64(fnv1a(bytes));
        try {
            return Json::parse(bytes);
        } catch (const std::exception& ex) {
            throw Error("ParseError", "invalid JSON in '" + path + "': " + ex.what());
        }
    }

    KGraph graph(const std::string& path) {
        Json j = file_input(path);
        // accept a bare skeleton, a payload, or a full report
        if (j.contains("result")) j = j["result"];
        if (j.contains("skeleton")) j = j["skeleton"];
        if (j.contains("product")) j = j["product"];
        return skeleton_from_json(j);
    }

    Json unwrap_cochain(Json j) const {
        if (j.contains("result")) j = j["result"];
        if (j.contains("cochain")) j = j["cochain"];
        if (j.contains("witness")) j = j["witness"];
        return j;
    }

    void payload(const Json& body) const {
        if (out_path.empty()) return;
        std::ofstream out(out_path);
        out << body.dump(2) << "\n";
    }

    int emit(const Json& result, int code = 0) const {
        Json rep;
        rep["command"] = argv;
        rep["version"] = kVersion;
        rep["inputs"] = inputs;
        rep["timestamp"] = timestamp();
        rep["result"] = result;
        std::cout << rep.dump(2) << "\n";
        return code;
    }
};

Json group_json(const FGAbGroup& g) {
    Json j;
    j["free_rank"] = g.free_rank();
    Json torsion = Json::array();
    for (const auto& d : g.invariant_factors()) torsion.push_back(d.str());
    j["torsion"] = torsion;
    j["describe"] = g.describe();
    return j;
}

Json cohom_json(const CohomValue& v) {
    if (!v.circle) return group_json(v.group);
    Json j;
    j["circle_rank"] = v.circ.circle_rank;
    Json torsion = Json::array();
    for (const auto& d : v.circ.torsion) torsion.push_back(d.str());
    j["torsion"] = torsion;
    j["describe"] = v.circ.describe();
    return j;
}

Json basis_json(const FGAbGroup& g) {
    Json basis = Json::array();
    for (std::size_t c = 0; c < g.gen_count(); ++c) {
        Json col = Json::array();
        for (std::size_t r = 0; r < g.ambient; ++r) col.push_back(g.gens.at(r, c).str());
        basis.push_back(col);
    }
    return basis;
}

std::vector<std::pair<int, int>> theta_from_spec(Session& s, int m, int n,
                                                 const std::string& spec) {
    if (spec == "cyclic") return theta_cyclic(m, n);
    Json j = s.file_input(spec);
    if (!j.is_array()) throw Error("ParseError", "permutation file must be a JSON array");
    std::vector<std::pair<int, int>> theta(static_cast<std::size_t>(m) * n, {-1, -1});
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || entry[0].size() != 2 ||
            entry[1].size() != 2)
            throw Error("ParseError", "permutation entries must be [[i,j],[i',j']]");
        int i = entry[0][0].get<int>(), jj = entry[0][1].get<int>();
        int i2 = entry[1][0].get<int>(), j2 = entry[1][1].get<int>();
        if (i < 0 || i >= m || jj < 0 || jj >= n)
            throw Error("ParseError", "permutation key out of range");
        theta[i * n + jj] = {i2, j2};
    }
    for (const auto& [a, b] : theta)
        if (a < 0) throw Error("NotABijection", "permutation file misses a pair");
    return theta;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for colored-skeleton graphs, cubical cohomology and "
                 "crossed products"};
    app.require_subcommand(1);
    Session session;
    for (int i = 0; i < argc; ++i) session.argv.push_back(argv[i]);

    std::string graph_path = "-", auto_path, cochain_path;
    std::string coeff_text = "Z", convention = "1-beta*", perm_spec, auto_out;
    int dim = -1, gen_n = 0, gen_m = 0;
    std::size_t generators = 0;
    bool use_uct = false;
    std::uint64_t seed = 20250808;

    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("-o,--out", session.out_path, "write the bare payload to this file");
    };
    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("graph", graph_path, "skeleton JSON file ('-' = stdin)");
    };

    auto* gen = app.add_subcommand("gen", "generate a built-in skeleton");
    gen->require_subcommand(1);
    auto* gen_bouquet = gen->add_subcommand("bouquet", "single vertex with n loops");
    gen_bouquet->add_option("n", gen_n, "number of loops")->required();
    add_out(gen_bouquet);
    auto* gen_theta = gen->add_subcommand("theta", "single-vertex 2-graph from a bijection");
    gen_theta->add_option("m", gen_m, "color-1 edges")->required();
    gen_theta->add_option("n", gen_n, "color-2 edges")->required();
    gen_theta->add_option("perm", perm_spec, "'cyclic' or a JSON permutation file")->required();
    add_out(gen_theta);
    auto* gen_tower = gen->add_subcommand("tower", "finite tower truncation with its cyclic map");
    gen_tower->add_option("N", gen_n, "number of levels")->required();
    gen_tower->add_option("--auto-out", auto_out, "write the cyclic automorphism here");
    add_out(gen_tower);

    auto* validate = app.add_subcommand("validate", "check the axioms of a skeleton file");
    add_graph(validate);

    auto* cubes_cmd = app.add_subcommand("cubes", "enumerate cubes of a skeleton");
    add_graph(cubes_cmd);
    cubes_cmd->add_option("--dim", dim, "dimension (default: all)");

    auto* homology_cmd = app.add_subcommand("homology", "integral homology groups");
    add_graph(homology_cmd);
    homology_cmd->add_option("--dim", dim);

    auto* cohomology_cmd = app.add_subcommand("cohomology", "cohomology with coefficients");
    add_graph(cohomology_cmd);
    cohomology_cmd->add_option("--dim", dim);
    cohomology_cmd->add_option("--coeff", coeff_text, "Z, Z/m, T or a sum like Z^2+Z/4");
    cohomology_cmd->add_flag("--uct", use_uct, "assemble from integral homology instead");

    auto* crossed_cmd =
        app.add_subcommand("crossed", "crossed-product skeleton of an automorphism");
    add_graph(crossed_cmd);
    crossed_cmd->add_option("--auto", auto_path)->required();
    add_out(crossed_cmd);

    auto* les_cmd = app.add_subcommand("les", "verify the cohomology long exact sequence");
    add_graph(les_cmd);
    les_cmd->add_option("--auto", auto_path)->required();
    les_cmd->add_option("--coeff", coeff_text);
    les_cmd->add_option("--convention", convention, "'1-beta*' (default) or 'delta_E'");

    auto* cocycle = app.add_subcommand("cocycle", "circle-valued cochain computations");
    cocycle->require_subcommand(1);
    std::map<std::string, CLI::App*> csub;
    for (const char* name : {"check", "witness", "inflate", "restrict", "twist-data",
                             "cor2-lift", "cohrel"}) {
        CLI::App* c = cocycle->add_subcommand(name);
        add_graph(c);
        c->add_option("--cochain", cochain_path)->required();
        c->add_option("--generators", generators, "free angle generators in the workspace");
        add_out(c);
        csub[name] = c;
    }
    for (const char* name : {"inflate", "restrict", "twist-data", "cor2-lift", "cohrel"})
        csub[name]->add_option("--auto", auto_path)->required();

    auto* dot_cmd = app.add_subcommand("dot", "DOT rendering of the colored skeleton");
    add_graph(dot_cmd);
    add_out(dot_cmd);

    auto* suite = app.add_subcommand("paper-suite", "run the bundled verification battery");
    suite->add_option("--seed", seed, "seed for the randomized property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_bouquet->parsed() || gen_theta->parsed() || gen_tower->parsed()) {
            Json skeleton;
            Json result;
            if (gen_bouquet->parsed()) {
                skeleton = skeleton_to_json(make_bouquet(gen_n));
            } else if (gen_theta->parsed()) {
                auto theta = theta_from_spec(session, gen_m, gen_n, perm_spec);
                skeleton = skeleton_to_json(make_theta_graph(gen_m, gen_n, theta));
            } else {
                TowerGraph t = make_tower(gen_n);
                skeleton = skeleton_to_json(t.graph);
                result["automorphism"] = automorphism_to_json(t.graph, t.cyclic);
                if (!auto_out.empty()) {
                    std::ofstream out(auto_out);
                    out << result["automorphism"].dump(2) << "\n";
                }
            }
            result["skeleton"] = skeleton;
            if (!session.out_path.empty()) {
                session.payload(skeleton);
                return session.emit(result);
            }
            // bare skeleton on stdout so generators pipe into the other verbs
            std::cout << skeleton.dump(2) << "\n";
            return 0;
        }

        if (validate->parsed()) {
            KGraph g = session.graph(graph_path);
            Json result;
            result["valid"] = true;
            result["rank"] = g.rank();
            result["vertices"] = g.vertex_count();
            result["edges"] = g.edge_count();
            result["squares"] = g.squares().size();
            result["row_finite"] = g.row_finite();
            result["has_sources"] = g.has_sources();
            return session.emit(result);
        }

        if (cubes_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            CubicalComplex cx = CubicalComplex::build(g);
            Json result = Json::array();
            int lo = dim >= 0 ? dim : 0;
            int hi = dim >= 0 ? dim : g.rank();
            for (int r = lo; r <= hi; ++r) {
                Json entry;
                entry["dim"] = r;
                entry["count"] = cx.count(r);
                Json labels = Json::array();
                for (const Cube& c : cx.cube_list(r)) labels.push_back(g.cube_label(c));
                entry["cubes"] = labels;
                result.push_back(entry);
            }
            return session.emit(Json{{"cubes", result}});
        }

        if (homology_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            CubicalComplex cx = CubicalComplex::build(g);
            Json result = Json::array();
            int lo = dim >= 0 ? dim : 0;
            int hi = dim >= 0 ? dim : g.rank();
            for (int r = lo; r <= hi; ++r) {
                FGAbGroup h = homology(cx, r);
                Json entry;
                entry["degree"] = r;
                entry["coeff"] = "Z";
                entry.update(group_json(h));
                entry["basis"] = basis_json(h);
                result.push_back(entry);
            }
            return session.emit(Json{{"homology", result}});
        }

        if (cohomology_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            CubicalComplex cx = CubicalComplex::build(g);
            CoeffGroup coeff = CoeffGroup::parse(coeff_text);
            Json result = Json::array();
            int lo = dim >= 0 ? dim : 0;
            int hi = dim >= 0 ? dim : g.rank() + 1;
            for (int r = lo; r <= hi; ++r) {
                CohomValue v =
                    use_uct ? cohomology_via_uct(cx, r, coeff) : cohomology(cx, r, coeff);
                Json entry;
                entry["degree"] = r;
                entry["coeff"] = coeff.describe();
                entry.update(cohom_json(v));
                // cocycle representatives are available when the group was
                // computed directly on the cochain coordinates
                if (!v.circle && v.group.ambient == cx.count(r))
                    entry["basis"] = basis_json(v.group);
                result.push_back(entry);
            }
            return session.emit(Json{{"cohomology", result}});
        }

        if (crossed_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            Automorphism beta = automorphism_from_json(g, session.file_input(auto_path));
            CrossedProduct cp = crossed_product(g, beta);
            Json product = crossed_to_json(cp);
            session.payload(product);
            return session.emit(Json{{"product", product}});
        }

        if (les_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            Automorphism beta = automorphism_from_json(g, session.file_input(auto_path));
            CrossedProduct cp = crossed_product(g, beta);
            ConnectingConvention conv = convention == "delta_E"
                                            ? ConnectingConvention::BoundaryMap
                                            : ConnectingConvention::OneMinusBetaStar;
            LesReport rep = assemble_les(cp, CoeffGroup::parse(coeff_text), conv);
            Json nodes = Json::array();
            for (const auto& node : rep.nodes) {
                Json n;
                n["label"] = node.label;
                n["group"] = node.group;
                n["incoming"] = node.incoming;
                n["outgoing"] = node.outgoing;
                n["exact"] = node.verdict.exact;
                if (!node.verdict.exact) n["detail"] = node.verdict.detail;
                nodes.push_back(n);
            }
            Json result;
            result["coeff"] = rep.coeff;
            result["convention"] = convention_name(rep.convention);
            result["all_exact"] = rep.all_exact;
            result["nodes"] = nodes;
            return session.emit(result, rep.all_exact ? 0 : 1);
        }

        if (cocycle->parsed()) {
            KGraph g = session.graph(graph_path);
            const std::string verb = cocycle->get_subcommands().front()->get_name();
            if (verb == "check" || verb == "witness") {
                CubicalComplex cx = CubicalComplex::build(g);
                PhaseCochain f = cochain_from_json(
                    cx, session.unwrap_cochain(session.file_input(cochain_path)), generators);
                if (verb == "check") {
                    bool ok = is_cocycle(cx, f);
                    return session.emit(Json{{"degree", f.degree}, {"is_cocycle", ok}},
                                        ok ? 0 : 1);
                }
                auto w = coboundary_preimage(cx, f);
                Json result;
                result["found"] = w.has_value();
                if (w) {
                    result["witness"] = cochain_to_json(cx, *w);
                    session.payload(result["witness"]);
                }
                return session.emit(result, w ? 0 : 1);
            }
            Automorphism beta = automorphism_from_json(g, session.file_input(auto_path));
            CrossedProduct cp = crossed_product(g, beta);
            auto load_on = [&](const CubicalComplex& cx) {
                return cochain_from_json(
                    cx, session.unwrap_cochain(session.file_input(cochain_path)), generators);
            };
            if (verb == "inflate") {
                Json out = cochain_to_json(cp.prod_cx,
                                           inflate_from_base(cp, load_on(cp.base_cx)));
                session.payload(out);
                return session.emit(Json{{"cochain", out}});
            }
            if (verb == "restrict") {
                Json out =
                    cochain_to_json(cp.base_cx, restrict_to_base(cp, load_on(cp.prod_cx)));
                session.payload(out);
                return session.emit(Json{{"cochain", out}});
            }
            if (verb == "twist-data") {
                TwistTable t = twist_table(cp, load_on(cp.prod_cx));
                Json fwd = Json::object(), inv = Json::object();
                for (std::size_t e = 0; e < g.edge_count(); ++e) {
                    const std::string& id = g.edge(static_cast<int>(e)).id;
                    fwd[id] = Json{{"phase", t.phase[e].format()},
                                   {"edge", g.edge(t.target_edge[e]).id}};
                    inv[id] = Json{{"phase", t.inv_phase[e].format()},
                                   {"edge", g.edge(t.inv_target_edge[e]).id}};
                }
                return session.emit(Json{{"generator_map", fwd}, {"inverse_map", inv}});
            }
            if (verb == "cor2-lift") {
                PhaseCochain phi = lift_invariant_cocycle(cp, load_on(cp.base_cx));
                Json out = cochain_to_json(cp.prod_cx, phi);
                session.payload(out);
                return session.emit(Json{{"cochain", out}});
            }
            // cohrel
            SquareCheck check = twist_square_residues(cp, load_on(cp.prod_cx));
            Json residues = Json::object();
            for (std::size_t s = 0; s < check.residues.size(); ++s)
                residues[g.cube_label(cp.base_cx.cube_list(2)[s])] = check.residues[s].format();
            return session.emit(Json{{"all_zero", check.ok}, {"residues", residues}},
                                check.ok ? 0 : 1);
        }

        if (dot_cmd->parsed()) {
            KGraph g = session.graph(graph_path);
            std::string text = dot_export(g);
            if (session.out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(session.out_path);
                out << text;
            }
            return 0;
        }

        if (suite->parsed()) {
            (void)thread_cap();  // parallelism cap; evaluation is deterministic
            auto results = kgl::acceptance::run_all(seed);
            int failures = 0;
            for (const auto& r : results) {
                std::printf("[%2d/%zu] %s  %s — %s\n", r.number, results.size(),
                            r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
                if (!r.pass) ++failures;
            }
            std::printf("%s: %zu criteria, %d failed\n", failures == 0 ? "OK" : "FAILED",
                        results.size(), failures);
            return failures == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        Json err;
        err["error"] = Json{{"code", e.code()}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
