#include "kadlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kadlab/errors.hpp"
#include "kadlab/minimize.hpp"

namespace kadlab {

namespace {

void require_k(int k) {
    if (k < 1) throw DomainError("k must be positive");
}

double log_moment_base(int k, double r) {
    // log(k!) - sum log(r+i), the single-step log moment.
    double s = 0;
    for (int i = k; i >= 1; --i) s += std::log(r + i);
    return std::lgamma(static_cast<double>(k) + 1) - s;
}

}  // namespace

double harmonic(int k) {
    require_k(k);
    double s = 0;
    for (int i = k; i >= 1; --i) s += 1.0 / i;
    return s;
}

double rate_h(int k, int offset, double r) {
    require_k(k);
    if (offset < 0 || offset > 2) throw DomainError("offset must be 0, 1, or 2");
    if (!(r > 0)) throw DomainError("rate function needs r > 0");
    double s = 0;
    for (int i = k; i >= 1; --i) s += std::log1p(r / i);
    return (r + offset) / s;
}

double constant(int k, int offset) {
    require_k(k);
    if (offset == 0) return 1.0 / harmonic(k);
    if (offset != 1 && offset != 2) throw DomainError("offset must be 0, 1, or 2");
    auto res = minimize_positive([k, offset](double r) { return rate_h(k, offset, r); });
    return res.value;
}

double beta_product_moment(int k, double r, int t) {
    require_k(k);
    if (!(r > 0)) throw DomainError("moment needs r > 0");
    if (t < 0) throw DomainError("moment needs t >= 0");
    if (t == 0) return 1.0;
    return std::exp(t * log_moment_base(k, r));
}

double tail_bound(double n, int k, int t, double r) {
    require_k(k);
    if (!(n >= 1)) throw DomainError("tail bound needs n >= 1");
    if (t < 0) throw DomainError("tail bound needs t >= 0");
    if (!(r > 0)) throw DomainError("tail bound needs r > 0");
    double log_val = t * log_moment_base(k, r) + r * std::log(n);
    return std::clamp(std::exp(log_val), 0.0, 1.0);
}

double tail_bound_optimized(double n, int k, int t) {
    require_k(k);
    if (!(n >= 1)) throw DomainError("tail bound needs n >= 1");
    if (t < 0) throw DomainError("tail bound needs t >= 0");
    // The log of the bound is convex in r, so one valley at most.
    auto res = minimize_positive(
        [n, k, t](double r) { return t * log_moment_base(k, r) + r * std::log(n); });
    return std::clamp(std::exp(res.value), 0.0, 1.0);
}

double g1_cdf(int k, int i) {
    require_k(k);
    if (i < 0) throw DomainError("cdf argument must be nonnegative");
    if (i == 0) return 0.0;
    return std::exp(k * std::log1p(-std::pow(2.0, -i)));
}

double expected_g1(int k) {
    require_k(k);
    // E[G_1] = sum_{i>=0} P{G_1 > i}; the i-th tail is 1-(1-2^{-i})^k, which
    // is at most k 2^{-i}, so stop once that envelope drops below 1e-15.
    std::vector<double> terms{1.0};
    for (int i = 1; k * std::pow(2.0, -i) >= 1e-15; ++i) {
        terms.push_back(-std::expm1(k * std::log1p(-std::pow(2.0, -i))));
    }
    double s = 0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return s;
}

double g_of_k(int k) { return std::numbers::ln2 * expected_g1(k); }

std::vector<ConstantsRow> constants_table(int k_lo, int k_hi) {
    if (k_lo < 1 || k_hi < k_lo) throw DomainError("bad k range");
    std::vector<ConstantsRow> rows;
    rows.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (int k = k_lo; k <= k_hi; ++k) {
        rows.push_back({k, constant(k, 0), constant(k, 1), constant(k, 2)});
    }
    return rows;
}

}  // namespace kadlab
