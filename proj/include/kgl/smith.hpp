#pragma once

#include <cstdint>
#include <optional>

#include "kgl/int_matrix.hpp"

namespace kgl {

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
/// Uinv and Vinv are carried along so that unimodularity is certified by
/// U*Uinv == I and basis changes can be undone without a separate inversion.
struct Smith {
    IntMatrix U, Uinv, D, V, Vinv;
    std::size_t rank = 0;
    IntVec diagonal;  // length min(rows, cols)
};

enum class PivotRule {
    SmallestAbs,  // deterministic: smallest nonzero |entry|, ties by position
    Randomized,   // random nonzero pivot (used to cross-check basis independence)
};

Smith smith_normal_form(const IntMatrix& a, PivotRule rule = PivotRule::SmallestAbs,
                        std::uint64_t seed = 0);

/// Reusable exact solver for A x = b built on one Smith decomposition.
class LinearSolver {
public:
    explicit LinearSolver(const IntMatrix& a);
    std::optional<IntVec> solve(const IntVec& b) const;
    const Smith& smith() const { return snf_; }

private:
    std::size_t rows_, cols_;
    Smith snf_;
};

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

/// Solves A x = b over Z/m (m >= 2) by lifting to Z on [A | mI].
/// The returned coordinates are normalized into [0, m).
std::optional<IntVec> solve_mod(const IntMatrix& a, const IntVec& b, const Int& m);

/// Basis (as columns) of the integer kernel lattice {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Generators (as columns) of {x : A x = 0 mod m}; m = 0 means the plain kernel.
IntMatrix kernel_mod(const IntMatrix& a, const Int& m);

/// Basis (as columns) of the column lattice of `gens`.
IntMatrix column_lattice_basis(const IntMatrix& gens);

bool lattice_contains(const IntMatrix& gens, const IntVec& v);
bool lattice_subset(const IntMatrix& sub, const IntMatrix& super);
bool lattice_equal(const IntMatrix& a, const IntMatrix& b);

}  // namespace kgl
