#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadlab/node_id.hpp"

namespace kadlab {

// One end-to-end guarantee, its verdict, and the numbers it gated on.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fixed list of tiny routing instances used to compare the exact enumerated
// hop law against sampled histograms. Deterministic; independent of any seed
// the caller supplies for the sampling side.
struct CatalogEntry {
    std::vector<NodeId> ids;
    int k = 1;
    NodeId x;
    NodeId y;
};
std::vector<CatalogEntry> oracle_catalog();

// Exact expected first-passage time of the depth-gain walk over log2(n),
// by backward recursion on the integer sum.
double expected_t_n_exact(std::uint64_t n, int k);

CheckResult constants_table_check();
CheckResult closed_form_identities_check();
CheckResult shrink_moment_check(std::uint64_t seed);
CheckResult depth_gain_law_check(std::uint64_t seed);
CheckResult shrink_dominance_check(std::uint64_t seed);
CheckResult tail_alignment_check(std::uint64_t seed);
CheckResult polar_ratio_check(std::uint64_t seed);
CheckResult first_passage_check(std::uint64_t seed);
CheckResult routing_invariants_check(std::uint64_t seed);
CheckResult exact_law_catalog_check(std::uint64_t seed);
CheckResult wide_bucket_sup_check(std::uint64_t seed);
CheckResult scaled_constant_trend_check();
CheckResult reproducibility_check(std::uint64_t seed);

}  // namespace kadlab
