#include "kgl/skeleton_io.hpp"

#include <fstream>
#include <sstream>

#include "kgl/errors.hpp"

namespace kgl {

namespace {

std::string require_string(const Json& j, const char* field, const std::string& where) {
    if (!j.contains(field) || !j[field].is_string())
        throw Error("ParseError", where + ": missing or non-string field '" + field + "'");
    return j[field].get<std::string>();
}

}  // namespace

KGraph skeleton_from_json(const Json& j) {
    if (!j.is_object()) throw Error("ParseError", "skeleton: top level must be an object");
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw Error("ParseError", "skeleton: missing integer field 'rank'");
    int rank = j["rank"].get<int>();
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw Error("ParseError", "skeleton: missing array field 'vertices'");
    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw Error("ParseError", "skeleton: vertex ids must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<EdgeSpec> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw Error("ParseError", "skeleton: 'edges' must be an array");
        for (const auto& e : j["edges"]) {
            EdgeSpec es;
            es.id = require_string(e, "id", "edge");
            if (!e.contains("color") || !e["color"].is_number_integer())
                throw Error("ParseError", "edge '" + es.id + "': missing integer field 'color'");
            es.color = e["color"].get<int>();
            es.src = require_string(e, "src", "edge '" + es.id + "'");
            es.rng = require_string(e, "rng", "edge '" + es.id + "'");
            edges.push_back(std::move(es));
        }
    }
    std::vector<SquareSpec> squares;
    if (j.contains("squares")) {
        if (!j["squares"].is_array())
            throw Error("ParseError", "skeleton: 'squares' must be an array");
        for (const auto& s : j["squares"]) {
            SquareSpec sq;
            sq.e = require_string(s, "e", "square");
            sq.f = require_string(s, "f", "square");
            sq.fp = require_string(s, "fp", "square");
            sq.ep = require_string(s, "ep", "square");
            squares.push_back(std::move(sq));
        }
    }
    return KGraph::from_parts(rank, vertices, edges, squares);
}

Json skeleton_to_json(const KGraph& g) {
    Json j;
    j["rank"] = g.rank();
    j["vertices"] = Json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        j["vertices"].push_back(g.vertex_id(static_cast<int>(v)));
    j["edges"] = Json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& er = g.edge(static_cast<int>(e));
        j["edges"].push_back(Json{{"id", er.id},
                                  {"color", er.color},
                                  {"src", g.vertex_id(er.src)},
                                  {"rng", g.vertex_id(er.rng)}});
    }
    j["squares"] = Json::array();
    for (const SquareRec& sq : g.squares())
        j["squares"].push_back(Json{{"e", g.edge(sq.e).id},
                                    {"f", g.edge(sq.f).id},
                                    {"fp", g.edge(sq.fp).id},
                                    {"ep", g.edge(sq.ep).id}});
    return j;
}

Automorphism automorphism_from_json(const KGraph& g, const Json& j) {
    if (!j.is_object() || !j.contains("vertex_map") || !j.contains("edge_map"))
        throw Error("ParseError", "automorphism: need objects 'vertex_map' and 'edge_map'");
    std::vector<int> vmap(g.vertex_count(), -1), emap(g.edge_count(), -1);
    for (const auto& [from, to] : j["vertex_map"].items()) {
        auto a = g.vertex_index(from);
        auto b = g.vertex_index(to.get<std::string>());
        if (!a || !b)
            throw Error("ParseError", "automorphism: unknown vertex in '" + from + "' -> '" +
                                          to.get<std::string>() + "'");
        vmap[*a] = *b;
    }
    for (const auto& [from, to] : j["edge_map"].items()) {
        auto a = g.edge_index(from);
        auto b = g.edge_index(to.get<std::string>());
        if (!a || !b)
            throw Error("ParseError", "automorphism: unknown edge in '" + from + "' -> '" +
                                          to.get<std::string>() + "'");
        emap[*a] = *b;
    }
    for (std::size_t v = 0; v < vmap.size(); ++v)
        if (vmap[v] < 0)
            throw Error("ParseError",
                        "automorphism: vertex '" + g.vertex_id(static_cast<int>(v)) + "' unmapped");
    for (std::size_t e = 0; e < emap.size(); ++e)
        if (emap[e] < 0)
            throw Error("ParseError",
                        "automorphism: edge '" + g.edge(static_cast<int>(e)).id + "' unmapped");
    return Automorphism::build(g, vmap, emap);
}

Json automorphism_to_json(const KGraph& g, const Automorphism& a) {
    Json j;
    j["vertex_map"] = Json::object();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        j["vertex_map"][g.vertex_id(static_cast<int>(v))] = g.vertex_id(a.vertex_map[v]);
    j["edge_map"] = Json::object();
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        j["edge_map"][g.edge(static_cast<int>(e)).id] = g.edge(a.edge_map[e]).id;
    return j;
}

std::string dot_export(const KGraph& g) {
    std::ostringstream os;
    os << "digraph skeleton {\n";
    os << "  // color 1: solid/blue, color 2: dashed/red, color 3: dotted/darkgreen\n";
    os << "  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        os << "  \"" << g.vertex_id(static_cast<int>(v)) << "\";\n";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const EdgeRec& er = g.edge(static_cast<int>(e));
        const char* style = "solid";
        const char* color = "gray";
        switch (er.color) {
            case 1: style = "solid"; color = "blue"; break;
            case 2: style = "dashed"; color = "red"; break;
            case 3: style = "dotted"; color = "darkgreen"; break;
            default: break;
        }
        os << "  \"" << g.vertex_id(er.src) << "\" -> \"" << g.vertex_id(er.rng) << "\" [label=\""
           << er.id << "\", style=" << style << ", color=" << color << "];\n";
    }
    os << "}\n";
    return os.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw Error("ParseError", "invalid JSON in '" + path + "': " + ex.what());
    }
    return j;
}

}  // namespace kgl
