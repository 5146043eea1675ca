#pragma once

#include <string>
#include <vector>

namespace rigmat {

/// One executable regression with hard-coded expected values. The
/// expectations are literals in the case code, never recomputed from the
/// library under test.
struct CaseReport {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;  // verified values, or the first mismatch
};

std::vector<std::string> corpus_case_ids();
CaseReport run_case(const std::string& id);
std::vector<CaseReport> run_all_cases();

}  // namespace rigmat
