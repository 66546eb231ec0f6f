#pragma once

#include <cstddef>
#include <vector>

namespace kadlab {

// Distribution-free half-width for an empirical CDF at the given confidence.
double dkw_epsilon(std::size_t n, double confidence);

// One-sided comparison of upper tails: does sample set a look stochastically
// smaller than sample set b, allowing both empirical CDFs their DKW slack?
struct DominanceReport {
    double confidence = 0;
    double eps_a = 0;
    double eps_b = 0;
    std::vector<double> thresholds;  // every pooled sample value, ascending
    std::vector<double> gaps;        // tail_a(r) - tail_b(r) at each threshold
    double max_gap = 0;
    double slack = 0;  // eps_a + eps_b
    bool pass = false;
};

DominanceReport dominance_test(std::vector<double> a, std::vector<double> b, double confidence);

}  // namespace kadlab
