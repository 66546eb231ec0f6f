#pragma once

#include <cstdint>
#include <vector>

#include "kadlab/id_trie.hpp"
#include "kadlab/node_id.hpp"
#include "kadlab/rng.hpp"

namespace kadlab {

// One greedy lookup, recorded hop by hop. hops holds z_0..z_T; hop_depths
// holds the common-prefix length of each hop with the closest node to the
// target; subtree_sizes holds the number of members strictly closer to the
// target's nearest member than the current hop allows, ending in 0.
struct RoutingTrace {
    NodeId target;
    std::vector<NodeId> hops;
    std::vector<std::size_t> subtree_sizes;
    std::vector<int> hop_depths;

    std::size_t T() const { return hops.size() - 1; }
};

// A fixed id set with filled routing tables. Bucket i of node x is a uniform
// subset of min(k, class size) members from x's i-th distance class, drawn
// once at build time. Immutable afterwards; concurrent route() calls are safe.
class Network {
public:
    // Fill every bucket by sampling without replacement. rng is consumed in
    // node-major, bucket-minor order, so a seed pins the whole table.
    static Network build(std::vector<NodeId> ids, int k, RngStream& rng);

    // Adopt externally supplied tables (as member indices). Validates the
    // subset and size laws; used to couple two networks' randomness.
    static Network from_tables(IdTrie trie, int k,
                               std::vector<std::vector<std::vector<std::uint32_t>>> tables);

    const IdTrie& trie() const { return trie_; }
    int k() const { return k_; }
    std::size_t n() const { return trie_.n(); }
    int d() const { return trie_.d(); }

    std::vector<NodeId> bucket(const NodeId& x, int i) const;
    const std::vector<std::uint32_t>& bucket_indices(std::size_t node, int i) const;

    NodeId closest_node(const NodeId& y) const;

    // Greedy descent: from x, repeatedly jump to the member of the union of
    // the current hop's buckets that is nearest to y, while that strictly
    // improves. Ends at the member nearest to y.
    RoutingTrace route(const NodeId& x, const NodeId& y) const;

    // Reachability in both directions over the bucket digraph.
    bool strongly_connected() const;

private:
    Network() = default;

    IdTrie trie_;
    int k_ = 0;
    // tables_[node][i-1] = member indices in bucket i, ascending.
    std::vector<std::vector<std::vector<std::uint32_t>>> tables_;
};

// The same descent executed directly on the trie, resampling each consulted
// bucket on the fly. Distributed identically to route() on a freshly built
// network, since a lookup never consults the same bucket twice.
RoutingTrace simulate_routing_process(const IdTrie& trie, const NodeId& x, const NodeId& y, int k,
                                      RngStream& rng);

std::vector<std::size_t> s_sequence(const RoutingTrace& trace);

}  // namespace kadlab
