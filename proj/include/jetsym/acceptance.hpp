#pragma once

#include <string>
#include <vector>

namespace jetsym {

struct CriterionResult {
    int index = 0;
    std::string title;
    bool pass = true;
    std::string detail;
    double seconds = 0;
};

// Runs the acceptance checks; the callback sees each result as soon as it is known.
std::vector<CriterionResult> run_acceptance(void (*report)(const CriterionResult &) = nullptr);
std::string format_result(const CriterionResult &r);

}  // namespace jetsym
