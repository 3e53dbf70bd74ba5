#pragma once

// Self-verification suite behind `oraclesim verify`: closed-form regression of
// every pipeline state, structural properties, deferred measurement, reduced
// state invariance, exhaustive Deutsch-Jozsa and sampling sanity.

#include <string>
#include <vector>

namespace oraclesim {

struct CheckResult {
    std::string name;
    /// Acceptance criterion (1-11) the check belongs to.
    int criterion = 0;
    bool passed = false;
    double max_deviation = 0.0;
    std::string detail;
};

/// Names of every check run_verification() produces, in order.
const std::vector<std::string> &verification_manifest();

std::vector<CheckResult> run_verification();

} // namespace oraclesim
