// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same criteria back the CLI's `suite` subcommand.
#include <iostream>

#include "modelth/suite.hpp"

int main() {
    modelth::SuiteOptions opts;
    opts.jobs = 1;
    auto results = modelth::run_acceptance_suite(opts);
    std::cout << modelth::suite_lines(results);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::cout << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}
