#pragma once

#include <vector>

namespace kadlab {

// k-th harmonic number, summed smallest term first.
double harmonic(int k);

// (r + offset) / sum_{i=1..k} log(1 + r/i) for r > 0. The offset-0 form is
// nondecreasing in r with limit 1/H_k at 0; offsets 1 and 2 have an interior
// minimum defining the two larger routing constants.
double rate_h(int k, int offset, double r);

// offset 0: 1/H_k in closed form. offsets 1, 2: inf over r of rate_h.
double constant(int k, int offset);

// E[(B_1 ... B_t)^r] for B the minimum of k uniforms: (k!/prod(r+i))^t,
// evaluated in log space.
double beta_product_moment(int k, double r, int t);

// Chernoff-style bound (k!/prod(r+i))^t * n^r, clamped to [0,1].
double tail_bound(double n, int k, int t, double r);
double tail_bound_optimized(double n, int k, int t);

// P{G_1 <= i} = (1 - 2^{-i})^k: the law of the depth gained in one hop.
double g1_cdf(int k, int i);

// E[G_1] by tail summation, truncated once the remainder is below 1e-15.
double expected_g1(int k);

// g(k) = log 2 * E[G_1]; lies in [H_k, H_k + log 2].
double g_of_k(int k);

struct ConstantsRow {
    int k;
    double c_k;
    double c_k_prime;
    double c_k_star;
};

std::vector<ConstantsRow> constants_table(int k_lo, int k_hi);

}  // namespace kadlab
