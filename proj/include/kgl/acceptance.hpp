#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kgl::acceptance {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full verification battery (worked-example values, exact-sequence
/// checks, and the randomized property suites) and returns one result per
/// criterion. Deterministic for a fixed seed.
std::vector<CriterionResult> run_all(std::uint64_t seed = 20250808);

}  // namespace kgl::acceptance
