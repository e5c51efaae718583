#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcat/report.hpp"

namespace tcat {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct SuiteOptions {
    std::uint64_t seed = kDefaultSeed;
    unsigned cases = 200;
    std::string mutate;  // "" or "bianchi"
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Criteria 1..9 of the acceptance list.
CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt);
// The suite as a report; verdict names carry the criterion number.
CheckReport selftest_report(const std::vector<CriterionResult>& results);

}  // namespace tcat
