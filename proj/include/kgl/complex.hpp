#pragma once

#include <map>
#include <string>
#include <vector>

#include "kgl/abelian.hpp"
#include "kgl/kgraph.hpp"

namespace kgl {

/// Cube lists Q_0..Q_k with index maps and the boundary matrices between them.
/// Construction verifies that consecutive boundaries compose to zero.
class CubicalComplex {
public:
    static CubicalComplex build(KGraph g);

    const KGraph& graph() const { return g_; }
    int top_dim() const { return g_.rank(); }

    std::size_t count(int r) const;
    const std::vector<Cube>& cube_list(int r) const;  // empty outside 0..k
    int cube_index(int r, const Cube& c) const;

    /// boundary(r): Q_r -> Q_{r-1} for 1 <= r <= k; other r give the
    /// appropriately shaped zero matrix.
    IntMatrix boundary(int r) const;
    /// coboundary(r) = transpose of boundary(r+1), acting C^r -> C^{r+1}.
    IntMatrix coboundary(int r) const;

    /// Permutation matrix of the cube action of an automorphism on Z Q_r.
    IntMatrix automorphism_action(const Automorphism& a, int r) const;

private:
    KGraph g_;
    std::vector<std::vector<Cube>> cubes_;
    std::vector<std::map<Cube, int>> index_;
    std::vector<IntMatrix> boundary_;  // [r-1] holds d_r for r = 1..k
};

struct CircleDescriptor {
    std::size_t circle_rank = 0;  // number of full circle summands
    IntVec torsion;               // finite cyclic summands
    std::string describe() const;
    bool operator==(const CircleDescriptor&) const = default;
};

/// Coefficient group for cohomology: Z, Z/m, a finitely generated abelian
/// group, or the circle group (reported through its divisible-dual form).
struct CoeffGroup {
    enum class Kind { Z, Zmod, FG, Circle };
    Kind kind = Kind::Z;
    Int m = 0;          // for Zmod
    std::size_t fg_rank = 0;
    IntVec fg_factors;  // for FG

    static CoeffGroup integers() { return CoeffGroup{}; }
    static CoeffGroup mod(Int modulus);
    static CoeffGroup fg(std::size_t rank, IntVec factors);
    static CoeffGroup circle() { return CoeffGroup{Kind::Circle, 0, 0, {}}; }

    /// Parses "Z", "Z/6", "T", "Z^2+Z/4", ...
    static CoeffGroup parse(const std::string& text);
    std::string describe() const;

    /// The cyclic pieces as moduli (0 stands for Z); Circle has none.
    std::vector<Int> cyclic_summands() const;
    FGAbGroup as_group() const;  // throws for Circle
};

/// Cohomology value: an abelian group, or a circle-valued descriptor.
struct CohomValue {
    bool circle = false;
    FGAbGroup group;
    CircleDescriptor circ;
    std::string describe() const { return circle ? circ.describe() : group.describe(); }
};

/// H_r of the complex over Z, with explicit cycle representatives.
FGAbGroup homology(const CubicalComplex& cx, int r);

/// H^r with coefficients Z (m = 0) or Z/m, presented as a subquotient of the
/// cochain coordinate space so induced maps can be pushed through it.
FGAbGroup cohomology_presented(const CubicalComplex& cx, int r, const Int& m);

/// Direct cochain-level computation, one cyclic summand at a time.
CohomValue cohomology(const CubicalComplex& cx, int r, const CoeffGroup& coeff);

/// Ext(H_{r-1}, A) + Hom(H_r, A); the only route used for circle coefficients.
CohomValue cohomology_via_uct(const CubicalComplex& cx, int r, const CoeffGroup& coeff);

/// beta^* on H^r(-, Z/m) (m = 0 for Z); verifies the cochain-level chain-map
/// identity delta beta^* = beta^* delta before descending.
GroupHom pullback_hom(const CubicalComplex& cx, const Automorphism& a, int r, const Int& m);

/// beta_* on H_r(-, Z).
GroupHom pushforward_hom(const CubicalComplex& cx, const Automorphism& a, int r);

}  // namespace kgl
