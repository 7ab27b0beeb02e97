#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgl/errors.hpp"

namespace kgl {

struct EdgeRec {
    std::string id;
    int color = 0;  // 1-based
    int src = -1;   // source vertex index
    int rng = -1;   // range vertex index
};

/// e·f = fp·ep with color(e) = color(ep) = i < j = color(f) = color(fp).
struct SquareRec {
    int e = -1, f = -1, fp = -1, ep = -1;
    bool operator==(const SquareRec&) const = default;
};

/// An r-cube in canonical factorized form: edges listed with strictly
/// increasing colors, composing left to right (s(edges[m]) = r(edges[m+1])).
/// `vertex` is the range vertex; for r = 0 it is the cube itself.
struct Cube {
    std::vector<int> edges;
    int vertex = -1;

    std::size_t dim() const { return edges.size(); }
    auto operator<=>(const Cube&) const = default;
};

/// Input description of an edge/square before index resolution.
struct EdgeSpec {
    std::string id, src, rng;
    int color = 0;
};
struct SquareSpec {
    std::string e, f, fp, ep;
};

class Automorphism;

class KGraph {
public:
    /// Validates and builds: id uniqueness, square typing, completeness and
    /// uniqueness of the factorization bijection, and (for rank >= 3) the
    /// associativity of square resolutions on tricolored triples.
    static KGraph from_parts(int rank, const std::vector<std::string>& vertex_ids,
                             const std::vector<EdgeSpec>& edges,
                             const std::vector<SquareSpec>& squares);

    int rank() const { return rank_; }
    std::size_t vertex_count() const { return vertex_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    const EdgeRec& edge(int e) const { return edges_[e]; }
    std::optional<int> vertex_index(const std::string& id) const;
    std::optional<int> edge_index(const std::string& id) const;

    const std::vector<SquareRec>& squares() const { return squares_; }
    const SquareRec* left_square(int e, int f) const;
    const SquareRec* right_square(int fp, int ep) const;

    const std::vector<int>& edges_of_color(int color) const;
    const std::vector<int>& edges_into(int v, int color) const;  // rng == v
    const std::vector<int>& edges_from(int v, int color) const;  // src == v

    bool row_finite() const { return true; }  // finite graphs always are
    bool has_sources() const;                 // some (v, color) receives no edge

    /// Unique edge list composing to the same morphism with colors in the
    /// order `target_colors`, via repeated square applications.
    std::vector<int> shuffle(const std::vector<int>& edges,
                             const std::vector<int>& target_colors) const;

    Cube canonical_cube(const std::vector<int>& edges) const;
    Cube vertex_cube(int v) const { return Cube{{}, v}; }

    /// F_j^ell: ell = 0 strips the trailing color-i_j edge, ell = 1 the leading one.
    Cube face(const Cube& c, int j, int ell) const;

    /// Q_r in deterministic order: lex by color set, then by edge indices.
    std::vector<Cube> cubes(int r) const;

    std::string cube_label(const Cube& c) const;

    std::vector<int> cube_colors(const Cube& c) const;

private:
    friend class Automorphism;
    int rank_ = 0;
    std::vector<std::string> vertex_ids_;
    std::map<std::string, int> vertex_index_;
    std::vector<EdgeRec> edges_;
    std::map<std::string, int> edge_index_;
    std::vector<SquareRec> squares_;
    std::map<std::pair<int, int>, int> left_, right_;  // (e,f) / (fp,ep) -> square index
    std::vector<std::vector<int>> by_color_;           // [color-1] -> edge indices
    std::vector<std::vector<std::vector<int>>> into_, from_;  // [v][color-1]

    void check_associativity() const;
    std::array<int, 3> resolve_triple(std::array<int, 3> t, bool route_one) const;
};

/// Color-preserving graph automorphism; validated for src/rng equivariance and
/// square equivariance on construction.
class Automorphism {
public:
    std::vector<int> vertex_map, edge_map;
    std::vector<int> vertex_inv, edge_inv;

    static Automorphism build(const KGraph& g, const std::vector<int>& vmap,
                              const std::vector<int>& emap);
    static Automorphism identity(const KGraph& g);

    bool is_identity() const;
    Automorphism inverse() const;

    Cube apply(const Cube& c) const;
    Cube apply_inverse(const Cube& c) const;
};

std::vector<Automorphism> enumerate_automorphisms(const KGraph& g, std::size_t limit = 100000);

// ---- builders ------------------------------------------------------------

KGraph make_bouquet(int n);  // one vertex, n loops of color 1

/// Single-vertex 2-graph with m color-1 edges f_i, n color-2 edges g_j and
/// squares f_i g_j = g_{j'} f_{i'} where theta(i, j) = (i', j').
/// theta[i * n + j] = {i', j'}; must be a bijection.
KGraph make_theta_graph(int m, int n, const std::vector<std::pair<int, int>>& theta);

std::vector<std::pair<int, int>> theta_cyclic(int m, int n);  // (i+1 mod m, j+1 mod n)

struct TowerGraph {
    KGraph graph;
    Automorphism cyclic;
};

/// Finite truncation with vertices v1..vN and edges e{n}_{j} (1 <= j <= n < N)
/// from v_{n+1} to v_n, together with the level-wise cyclic automorphism that
/// fixes the vertices.
TowerGraph make_tower(int levels);

// ---- bounded semi-decision checks ----------------------------------------

struct BoundedVerdict {
    enum class Status { VerifiedUpToBound, CounterexampleFound, Inconclusive };
    Status status = Status::Inconclusive;
    std::vector<int> bound;
    std::string witness;  // first failing (or certifying) datum, human readable

    bool verified() const { return status == Status::VerifiedUpToBound; }
};

/// Searches, for every vertex v and pair m != n below the bound, a path
/// whose two degree-shifted segments differ; Inconclusive reports the first
/// pair with no witness below the bound.
BoundedVerdict check_aperiodicity(const KGraph& g, const std::vector<int>& degree_bound);

/// Searches for each (v, w) a degree N below the bound such that every path in
/// v Lambda^N ends at a vertex from which w is reachable.
BoundedVerdict check_cofinality(const KGraph& g, const std::vector<int>& degree_bound);

// ---- general morphism paths (used by the bounded checks) ------------------

/// A morphism in color-sorted normal form; edges compose left to right and
/// colors are nondecreasing. Degree-0 paths are vertices.
struct Path {
    std::vector<int> edges;
    int range_vertex = -1;
    auto operator<=>(const Path&) const = default;
};

std::vector<int> path_degree(const KGraph& g, const Path& p);
Path normal_form(const KGraph& g, std::vector<int> edges, int range_vertex);
/// The factor lambda(m, n) of the factorization lambda = alpha beta gamma
/// with d(alpha) = m and d(beta) = n - m.
Path path_segment(const KGraph& g, const Path& p, const std::vector<int>& m,
                  const std::vector<int>& n);
int path_source(const KGraph& g, const Path& p);

/// All morphisms with range v and degree <= bound (or == bound when exact).
std::vector<Path> morphisms_from(const KGraph& g, int v, const std::vector<int>& bound,
                                 bool exact_degree = false);

}  // namespace kgl
