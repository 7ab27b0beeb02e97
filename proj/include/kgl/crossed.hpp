#pragma once

#include <string>
#include <vector>

#include "kgl/complex.hpp"
#include "kgl/skeleton_io.hpp"

namespace kgl {

/// The rank-(k+1) graph obtained from a k-graph and an automorphism: base
/// edges keep their colors, every vertex v gains a color-(k+1) edge with range
/// v and source beta^{-1}(v), and the mixed squares identify
/// (e,0)(s(e),1) = (r(e),1)(beta^{-1}e,0).
class CrossedProduct {
public:
    KGraph base;
    Automorphism beta;
    KGraph product;
    CubicalComplex base_cx, prod_cx;

    std::vector<int> edge_base;        // product edge -> base edge, or -1
    std::vector<int> edge_zvertex;     // product edge -> base vertex of its z-loop, or -1
    std::vector<int> base_edge_lift;   // base edge -> product edge
    std::vector<int> zedge_of_vertex;  // base vertex -> product z-edge

    /// The product cube (c, ell): ell = 0 relabels the edges, ell = 1 appends
    /// the z-edge at the cube's source.
    Cube lift_cube(const Cube& c, int ell) const;
    int lift_index(const Cube& c, int ell) const;

    struct Provenance {
        int ell;
        Cube base_cube;
    };
    Provenance classify_cube(const Cube& product_cube) const;

    /// i*: C^r(product) -> C^r(base), f |-> f(.,0).
    IntMatrix restriction_matrix(int r) const;
    /// j*: C^{r-1}(base) -> C^r(product), supported on (.,1) cubes.
    IntMatrix inflation_matrix(int r) const;
    /// sigma: C^r(base) -> C^r(product), supported on (.,0) cubes.
    IntMatrix section_matrix(int r) const;
};

CrossedProduct crossed_product(const KGraph& g, const Automorphism& beta);

/// Skeleton JSON of the product plus a provenance block mapping product edges
/// to base edges / z-loop vertices.
Json crossed_to_json(const CrossedProduct& cp);

enum class ConnectingConvention {
    OneMinusBetaStar,  // 1 - beta^*
    BoundaryMap,       // (-1)^{r+1} (1 - (beta^{-1})^*)
};

std::string convention_name(ConnectingConvention c);

/// The connecting endomorphism of H^r(base, Z/m) (m = 0 for Z).
GroupHom connecting_hom(const CrossedProduct& cp, int r, const Int& m, ConnectingConvention conv);

struct LesNode {
    std::string label;     // which group in the sequence
    std::string group;     // its isomorphism type
    std::string incoming, outgoing;
    ExactnessResult verdict;
};

struct LesReport {
    std::string coeff;
    ConnectingConvention convention = ConnectingConvention::OneMinusBetaStar;
    std::vector<LesNode> nodes;
    bool all_exact = false;
};

/// Builds every group and induced map of the cohomology sequence
///   0 -> H^0(prod) -> H^0(base) -> H^0(base) -> H^1(prod) -> ... -> H^{k+1}(prod) -> 0
/// and checks exactness at every node (including injectivity at the head and
/// surjectivity at the tail). Coefficients: Z, Z/m, or finitely generated.
LesReport assemble_les(const CrossedProduct& cp, const CoeffGroup& coeff,
                       ConnectingConvention conv = ConnectingConvention::OneMinusBetaStar);

/// H_n(product) as forced by the homology exact sequence: the extension of
/// ker(1-beta_* | H_{n-1}) by coker(1-beta_* | H_n), which is determined once
/// that kernel is free. Throws LesIndeterminate otherwise.
FGAbGroup homology_via_les(const CrossedProduct& cp, int n);

}  // namespace kgl
