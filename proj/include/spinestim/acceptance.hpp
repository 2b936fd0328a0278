#pragma once

#include <string>
#include <vector>

namespace spinestim::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

// Runs the full verification suite (closed-form bounds, oracle equivalence,
// achievability, Monte Carlo saturation, optimizer corroboration, ...).
std::vector<CriterionResult> run_all();

// Prints one "PASS/FAIL <id> <name>: <detail>" line per criterion and
// returns the number of failures.
int report(const std::vector<CriterionResult>& results);

}  // namespace spinestim::acceptance
