#pragma once

// The acceptance suite: one decidable check per numbered criterion.

#include <string>
#include <vector>

namespace qb {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    // The failure reproduces a documented disagreement with a published
    // value exactly (for example swapped seed counts).
    bool known_deviation = false;
    double seconds = 0;
    double limit = 0;
    std::string detail;
};

CheckResult run_criterion(int id);
std::vector<CheckResult> run_acceptance(const std::vector<int>& ids);
std::vector<int> all_criteria();

}  // namespace qb
