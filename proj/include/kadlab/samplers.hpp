#pragma once

#include <cstdint>

#include "kadlab/rng.hpp"

namespace kadlab {

// Minimum of k independent uniforms on [0,1].
double sample_beta_min(int k, RngStream& rng);

// s0 times a product of t independent beta-min factors.
double sample_w(double s0, int k, int t, RngStream& rng);

// Depth gained in one hop: max of k geometrics, sampled by inverse CDF.
int sample_g1(int k, RngStream& rng);

// First time the running sum of hop gains reaches log2(n).
int sample_t_n(std::uint64_t n, int k, RngStream& rng);

// Smallest integer threshold equivalent to the real bound log2(n).
int ceil_log2(std::uint64_t n);

}  // namespace kadlab
