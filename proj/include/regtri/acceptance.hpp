#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace regtri {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    unsigned jobs = 1;
    // Directory for the determinism criterion's scratch artifacts; empty
    // means a temp directory is created and removed.
    std::string work_dir;
};

// Run the ten release criteria in order, streaming one "[PASS]/[FAIL] C<k>"
// line per criterion to out.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream& out);

// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace regtri
