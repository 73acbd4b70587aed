#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spectral {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS [3] documented failures: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace spectral
