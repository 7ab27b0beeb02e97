#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kgl/crossed.hpp"
#include "kgl/phase.hpp"

namespace kgl {

/// Total assignment of a Phase to every r-cube, indexed in complex cube order.
struct PhaseCochain {
    int degree = 0;
    std::size_t generators = 0;
    std::vector<Phase> values;

    bool is_zero() const;
    bool operator==(const PhaseCochain&) const = default;
};

PhaseCochain zero_cochain(const CubicalComplex& cx, int degree, std::size_t generators);

PhaseCochain cochain_add(const PhaseCochain& a, const PhaseCochain& b);
PhaseCochain cochain_sub(const PhaseCochain& a, const PhaseCochain& b);

/// delta^r f = f o boundary_{r+1}, evaluated additively.
PhaseCochain coboundary(const CubicalComplex& cx, const PhaseCochain& f);

bool is_cocycle(const CubicalComplex& cx, const PhaseCochain& f);

/// A cochain b with delta(b) = f, or nullopt. Solving happens in the divisible
/// group Q/Z + Q^g: free coordinates are rational linear systems, the turn
/// coordinate is solved modulo 1 (obstructions only from zero invariant
/// factors). The witness is the canonical one with vanishing kernel
/// parameters.
std::optional<PhaseCochain> coboundary_preimage(const CubicalComplex& cx, const PhaseCochain& f);

/// (beta^* f)(cube) = f(beta cube).
PhaseCochain pullback_cochain(const CubicalComplex& cx, const Automorphism& a,
                              const PhaseCochain& f);

/// Generators of Z^r(-, Phase): an integer basis of the rational kernel of
/// delta (free directions usable with arbitrary phase coefficients) plus
/// turn-valued torsion generators with their orders.
struct CocycleSpace {
    IntMatrix kernel;                            // q_r x s
    std::vector<std::pair<RatVec, Int>> torsion; // (turn vector, order >= 2)
};
CocycleSpace cocycle_space(const CubicalComplex& cx, int r);

// ---- crossed-product cochain maps -----------------------------------------

PhaseCochain restrict_to_base(const CrossedProduct& cp, const PhaseCochain& f);   // i*
PhaseCochain inflate_from_base(const CrossedProduct& cp, const PhaseCochain& f);  // j*
PhaseCochain section_to_product(const CrossedProduct& cp, const PhaseCochain& f); // sigma

/// For trivial twists (beta = id): h with h(c,1) = first, h(c,0) = second;
/// throws BetaNotIdentity otherwise.
PhaseCochain pair_cochain(const CrossedProduct& cp, const PhaseCochain& lower,
                          const PhaseCochain& upper);
std::pair<PhaseCochain, PhaseCochain> split_pair_cochain(const CrossedProduct& cp,
                                                         const PhaseCochain& h);

/// Scalar data of the automorphism attached to a 2-cocycle phi on the product:
/// edge e maps to the phase phi(beta e, 1) on the target edge beta e, and the
/// inverse sends e to -phi(e, 1) on beta^{-1} e.
struct TwistTable {
    std::vector<Phase> phase;       // indexed by base edge
    std::vector<int> target_edge;   // beta e
    std::vector<Phase> inv_phase;
    std::vector<int> inv_target_edge;
};
TwistTable twist_table(const CrossedProduct& cp, const PhaseCochain& phi);

/// Per-square residues of the six-term relation
///   -phi(beta s,0) + phi(s,0) - phi(beta f',1) + phi(beta e,1)
///   - phi(beta e',1) + phi(beta f,1)
/// over the base 2-cubes s = ef = f'e'; all residues vanish exactly when
/// delta^2 phi vanishes on the (.,1) 3-cubes.
struct SquareCheck {
    bool ok = true;
    std::vector<Phase> residues;  // indexed by base 2-cube
};
SquareCheck twist_square_residues(const CrossedProduct& cp, const PhaseCochain& phi);

/// Lifts a 2-cocycle psi on the base whose class is beta-invariant to a
/// 2-cocycle phi on the product with phi(.,0) = psi and phi(c,1) = b(beta^{-1}c)
/// where delta b = beta^* psi - psi. Throws ClassNotInvariant when no such b
/// exists.
PhaseCochain lift_invariant_cocycle(const CrossedProduct& cp, const PhaseCochain& psi);

// ---- cochain files ---------------------------------------------------------

/// {"degree": r, "generators": g, "values": {cube_label: "phase"}}
Json cochain_to_json(const CubicalComplex& cx, const PhaseCochain& f);
PhaseCochain cochain_from_json(const CubicalComplex& cx, const Json& j, std::size_t generators);

}  // namespace kgl
