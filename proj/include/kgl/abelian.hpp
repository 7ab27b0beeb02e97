#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgl/int_matrix.hpp"
#include "kgl/smith.hpp"

namespace kgl {

/// Finitely generated abelian group presented as a subquotient K/B of an
/// ambient Z^n. Generators carry explicit ambient representatives, so chain
/// level identities can be checked verbatim against them. `orders[i]` is 0 for
/// a free generator and d >= 2 for a torsion generator; torsion comes first in
/// divisibility order.
class FGAbGroup {
public:
    std::size_t ambient = 0;
    IntMatrix gens;       // ambient x s, class representatives
    IntVec orders;        // s entries
    IntMatrix relations;  // ambient x t, basis of the quotiented lattice B

    static FGAbGroup abstract_group(std::size_t free_rank, const IntVec& factors);
    static FGAbGroup zero() { return abstract_group(0, {}); }

    std::size_t gen_count() const { return orders.size(); }
    std::size_t free_rank() const;
    IntVec invariant_factors() const;
    bool is_trivial() const { return orders.empty(); }
    bool same_iso_class(const FGAbGroup& other) const;

    /// Coordinates of the class of an ambient vector z in terms of the stored
    /// generators, reduced modulo orders; nullopt when z does not lie in K.
    std::optional<IntVec> coords(const IntVec& z) const;

    IntVec reduce(IntVec c) const;  // entrywise mod orders (free entries untouched)

    std::string describe() const;  // e.g. "Z^2 + Z/3 + Z/12", "0"
};

/// K/B for the column lattices of k_gens and b_gens inside Z^ambient.
/// Requires B subset of K. When row_moduli is nonempty, entry r of every
/// generator representative is reduced modulo row_moduli[r] (0 = no
/// reduction); callers pass moduli known to lie in B to keep entries small.
FGAbGroup subquotient(const IntMatrix& k_gens, const IntMatrix& b_gens, std::size_t ambient,
                      const IntVec& row_moduli = {});

/// ker(d_out) / im(d_in); throws NotAComplex unless d_out * d_in = 0.
FGAbGroup subquotient_homology(const IntMatrix& d_out, const IntMatrix& d_in);

/// Homomorphism between presented groups; `matrix` columns are the images of
/// source generators in target generator coordinates.
class GroupHom {
public:
    FGAbGroup source, target;
    IntMatrix matrix;  // target.gen_count() x source.gen_count()

    static GroupHom make(FGAbGroup src, FGAbGroup dst, IntMatrix m);
    static GroupHom identity(const FGAbGroup& g);
    static GroupHom zero(const FGAbGroup& src, const FGAbGroup& dst);

    IntVec apply(const IntVec& source_coords) const;
    bool is_zero() const;
    bool is_identity() const;
};

/// The map on subquotients induced by an ambient-level map T (which must send
/// K_src into K_dst and B_src into B_dst); throws NotChainMap otherwise.
GroupHom induced_hom(const IntMatrix& t, const FGAbGroup& src, const FGAbGroup& dst);

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f

FGAbGroup kernel_group(const GroupHom& h);    // reps in source coordinates
FGAbGroup image_group(const GroupHom& h);     // reps in target coordinates
FGAbGroup cokernel_group(const GroupHom& h);  // target / image

struct ExactnessResult {
    bool exact = false;
    std::string detail;               // which condition failed, if any
    std::optional<IntVec> witness;    // offending generator coordinates
};

/// im(f) = ker(g)? Checks g∘f = 0 and that every kernel generator of g lies in
/// im(f) modulo relations.
ExactnessResult check_exact(const GroupHom& f, const GroupHom& g);

FGAbGroup hom_group(const FGAbGroup& g, const FGAbGroup& a);
FGAbGroup ext_group(const FGAbGroup& g, const FGAbGroup& a);

FGAbGroup direct_sum(const FGAbGroup& a, const FGAbGroup& b);

/// Rewrites a list of cyclic orders (each >= 1) into invariant-factor form.
IntVec normalize_factors(IntVec factors);

}  // namespace kgl
