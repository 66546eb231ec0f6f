#include "kadlab/dominance.hpp"

#include <algorithm>
#include <cmath>

#include "kadlab/errors.hpp"

namespace kadlab {

double dkw_epsilon(std::size_t n, double confidence) {
    if (n == 0) throw DomainError("need at least one sample");
    if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must be in (0,1)");
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

DominanceReport dominance_test(std::vector<double> a, std::vector<double> b, double confidence) {
    if (a.empty() || b.empty()) throw DomainError("need samples on both sides");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    DominanceReport report;
    report.confidence = confidence;
    report.eps_a = dkw_epsilon(a.size(), confidence);
    report.eps_b = dkw_epsilon(b.size(), confidence);
    report.slack = report.eps_a + report.eps_b;

    // Upper tails are step functions that only change at sample values, so
    // scanning the pooled values covers every possible threshold.
    report.thresholds.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(report.thresholds));
    report.thresholds.erase(std::unique(report.thresholds.begin(), report.thresholds.end()),
                            report.thresholds.end());

    auto tail = [](const std::vector<double>& v, double r) {
        auto it = std::lower_bound(v.begin(), v.end(), r);
        return static_cast<double>(v.end() - it) / static_cast<double>(v.size());
    };

    report.gaps.reserve(report.thresholds.size());
    report.max_gap = -1.0;
    for (double r : report.thresholds) {
        double gap = tail(a, r) - tail(b, r);
        report.gaps.push_back(gap);
        report.max_gap = std::max(report.max_gap, gap);
    }
    report.pass = report.max_gap <= report.slack;
    return report;
}

}  // namespace kadlab
