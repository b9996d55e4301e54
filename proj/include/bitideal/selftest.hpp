#pragma once

#include <string>
#include <vector>

#include "bitideal/budget.hpp"

namespace bitideal {

struct SuiteResult {
    std::string name;
    int checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Names of the available suites, in execution order.
const std::vector<std::string>& selftest_suites();

// Runs every suite whose name contains `filter` (empty = all) on the bundled
// fixtures. Throws InputError when the filter matches nothing.
std::vector<SuiteResult> run_selftest(const std::string& filter = "", Budget* budget = nullptr);

}  // namespace bitideal
