#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadlab/checks.hpp"

namespace kadlab {

// A named batch of invariant checks. budget scales trial counts; seed feeds
// every stochastic draw, so a report is reproducible from (suite, budget, seed).
struct SuiteReport {
    std::string suite;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool pass = false;
};

const std::vector<std::string>& verify_suite_names();
SuiteReport run_verify_suite(const std::string& suite, std::uint64_t budget, std::uint64_t seed);

}  // namespace kadlab
