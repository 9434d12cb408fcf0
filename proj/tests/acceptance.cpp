// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "jetsym/acceptance.hpp"

#include <cstdio>

int main() {
    auto results = jetsym::run_acceptance([](const jetsym::CriterionResult &r) {
        std::printf("%s\n", jetsym::format_result(r).c_str());
        std::fflush(stdout);
    });
    for (auto &r : results)
        if (!r.pass) return 1;
    return 0;
}
