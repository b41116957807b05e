// Acceptance gate: runs the full verification suite and prints one line per
// criterion.  Exit status 0 iff every criterion passes.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "bck/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

    std::vector<bck::CheckResult> results;
    try {
        results = bck::acceptance_suite(seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: aborted: %s\n", e.what());
        return 1;
    }

    bool all_pass = true;
    int i = 0;
    for (const auto& r : results) {
        ++i;
        std::printf("[%2d/10] %s  %-24s  metric %.3e  tol %.3e  (%s)\n", i,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.metric,
                    r.tolerance, r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    std::printf("acceptance: %s (seed %llu)\n", all_pass ? "PASS" : "FAIL",
                static_cast<unsigned long long>(seed));
    return all_pass ? 0 : 1;
}
