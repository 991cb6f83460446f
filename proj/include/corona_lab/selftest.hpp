#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corona_lab {

struct SelftestReport {
    std::string suite;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;
};

/// Invariant suite for one module: disc_geometry, blaschke, measures, hoffman or corona.
SelftestReport run_selftest(const std::string& suite, std::uint64_t seed = 0);

std::vector<std::string> selftest_suites();

}  // namespace corona_lab
