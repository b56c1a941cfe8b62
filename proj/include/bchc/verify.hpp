#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bchc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

// The criteria pin their own sizes (exact checks at L = 2 and 3, Monte
// Carlo scaling at L = 4 and 6).
struct VerifyOptions {
    bool with_scaling = false;  // include the L=4/6 Monte Carlo criterion
    int threads = 1;
    std::uint64_t seed = 7;
    long mc_sweeps = 12000;
    long mc_therm = 3000;
};

// Runs the acceptance checks and returns one row per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

void print_results(const std::vector<CriterionResult>& rows, std::ostream& os);
bool all_passed(const std::vector<CriterionResult>& rows);

}  // namespace bchc
