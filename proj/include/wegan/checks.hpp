#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wegan {

struct CheckResult {
    std::string name;
    std::uint64_t seed = 0;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> results;

    bool all_passed() const;
};

struct CheckOptions {
    /// Test hook: replaces the weight normalization with a faulty one so the
    /// suite can be shown to catch it.
    bool corrupt_weight_normalization = false;
};

/// Property suite: inequality sweep, simplex/monotonicity, equilibrium
/// weights, gradient check, MMD oracle, eta = 1 equivalence and the
/// constant-discriminator weight-variance check.
CheckReport run_checks(const CheckOptions& options = {});

void print_report(std::ostream& out, const CheckReport& report);

}  // namespace wegan
