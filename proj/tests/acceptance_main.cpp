// Acceptance harness: runs the full verification battery and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "kgl/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20250808;
    for (int i = 1; i < argc; ++i)
        if (std::strncmp(argv[i], "--seed=", 7) == 0) seed = std::strtoull(argv[i] + 7, nullptr, 10);

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
