#pragma once

#include <map>
#include <vector>

#include "kadlab/node_id.hpp"

namespace kadlab {

// Exact hop-count distribution of a lookup from x toward y, obtained by
// enumerating every equally likely bucket subset at every reachable node.
// Throws InfeasibleError when the product of subset counts over reachable
// buckets exceeds 1e6.
std::map<int, double> brute_force_t_distribution(const std::vector<NodeId>& ids, int k,
                                                 const NodeId& x, const NodeId& y);

}  // namespace kadlab
