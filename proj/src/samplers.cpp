#include "kadlab/samplers.hpp"

#include <bit>

#include "kadlab/constants.hpp"
#include "kadlab/errors.hpp"

namespace kadlab {

double sample_beta_min(int k, RngStream& rng) {
    if (k < 1) throw DomainError("k must be positive");
    double m = 1.0;
    for (int i = 0; i < k; ++i) m = std::min(m, rng.uniform01());
    return m;
}

double sample_w(double s0, int k, int t, RngStream& rng) {
    if (t < 0) throw DomainError("t must be nonnegative");
    double w = s0;
    for (int s = 0; s < t; ++s) w *= sample_beta_min(k, rng);
    return w;
}

int sample_g1(int k, RngStream& rng) {
    if (k < 1) throw DomainError("k must be positive");
    double u = rng.uniform01();
    int i = 1;
    while (g1_cdf(k, i) <= u) ++i;
    return i;
}

int ceil_log2(std::uint64_t n) {
    if (n < 2) throw DomainError("need n >= 2");
    return std::bit_width(n - 1);
}

int sample_t_n(std::uint64_t n, int k, RngStream& rng) {
    int threshold = ceil_log2(n);  // sums are integers, so >= log2(n) iff >= this
    int t = 0;
    int sum = 0;
    while (sum < threshold) {
        sum += sample_g1(k, rng);
        ++t;
    }
    return t;
}

}  // namespace kadlab
