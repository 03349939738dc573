#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treecodex::cli {

inline const std::vector<std::string> kCheckNames{"roundtrip", "bijectivity", "equivalence", "fast",
                                                  "mtt",       "ucsd",        "reversal",    "forest"};

struct CheckResult {
    std::string name;
    std::string scope;
    bool pass = true;
    double elapsed_ms = 0;
    std::vector<std::string> notes;  // counterexamples, or polynomials with --show
};

// Runs the named checks in the given order. Exhaustive checks need max_n <= 6.
std::vector<CheckResult> verify_suite(int max_n, const std::vector<std::string>& checks, bool show);
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace treecodex::cli
