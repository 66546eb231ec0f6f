#include "kadlab/network.hpp"

#include <algorithm>
#include <deque>

#include "kadlab/errors.hpp"

namespace kadlab {

namespace {

// Records one hop: its depth toward the nearest member, and how many members
// are still strictly closer (0 exactly at the end).
void record_hop(RoutingTrace& trace, const IdTrie& trie, const NodeId& z, const NodeId& y_star) {
    trace.hops.push_back(z);
    int a = common_prefix_len(z, y_star);
    trace.hop_depths.push_back(a);
    if (z == y_star) {
        trace.subtree_sizes.push_back(0);
        return;
    }
    auto cls = trie.distance_class(z, trie.d() - a);
    if (!cls) throw Error("internal: nearest member's distance class vanished");
    trace.subtree_sizes.push_back(cls->size());
}

}  // namespace

Network Network::build(std::vector<NodeId> ids, int k, RngStream& rng) {
    if (k < 1) throw DomainError("bucket capacity must be at least 1");
    Network net;
    net.trie_ = IdTrie(std::move(ids));
    net.k_ = k;
    std::size_t n = net.trie_.n();
    int d = net.trie_.d();
    net.tables_.resize(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        const NodeId& x = net.trie_.leaf(xi);
        net.tables_[xi].resize(static_cast<std::size_t>(d));
        for (int i = 1; i <= d; ++i) {
            auto cls = net.trie_.distance_class(x, i);
            if (!cls) continue;
            auto picks = net.trie_.sample_leaf_indices(*cls, static_cast<std::size_t>(k), rng);
            auto& bucket = net.tables_[xi][static_cast<std::size_t>(i - 1)];
            bucket.reserve(picks.size());
            for (auto p : picks) bucket.push_back(static_cast<std::uint32_t>(p));
        }
    }
    return net;
}

Network Network::from_tables(IdTrie trie, int k,
                             std::vector<std::vector<std::vector<std::uint32_t>>> tables) {
    if (k < 1) throw DomainError("bucket capacity must be at least 1");
    std::size_t n = trie.n();
    int d = trie.d();
    if (tables.size() != n) throw DomainError("table count does not match member count");
    for (std::size_t xi = 0; xi < n; ++xi) {
        if (tables[xi].size() != static_cast<std::size_t>(d)) {
            throw DomainError("bucket count does not match id length");
        }
        const NodeId& x = trie.leaf(xi);
        for (int i = 1; i <= d; ++i) {
            auto& bucket = tables[xi][static_cast<std::size_t>(i - 1)];
            std::sort(bucket.begin(), bucket.end());
            if (std::adjacent_find(bucket.begin(), bucket.end()) != bucket.end()) {
                throw DomainError("bucket holds a repeated member");
            }
            auto cls = trie.distance_class(x, i);
            std::size_t want = cls ? std::min<std::size_t>(static_cast<std::size_t>(k), cls->size()) : 0;
            if (bucket.size() != want) throw DomainError("bucket size violates the fill law");
            for (auto m : bucket) {
                if (!cls || m < cls->lo || m >= cls->hi) {
                    throw DomainError("bucket member outside its distance class");
                }
            }
        }
    }
    Network net;
    net.trie_ = std::move(trie);
    net.k_ = k;
    net.tables_ = std::move(tables);
    return net;
}

std::vector<NodeId> Network::bucket(const NodeId& x, int i) const {
    std::size_t xi = trie_.index_of(x);
    if (i < 1 || i > trie_.d()) throw UndefinedBucketError("bucket index out of range");
    std::vector<NodeId> out;
    for (auto m : tables_[xi][static_cast<std::size_t>(i - 1)]) out.push_back(trie_.leaf(m));
    return out;
}

const std::vector<std::uint32_t>& Network::bucket_indices(std::size_t node, int i) const {
    if (node >= trie_.n()) throw DomainError("node index out of range");
    if (i < 1 || i > trie_.d()) throw UndefinedBucketError("bucket index out of range");
    return tables_[node][static_cast<std::size_t>(i - 1)];
}

NodeId Network::closest_node(const NodeId& y) const {
    return trie_.leaf(trie_.closest_leaf_index(y));
}

RoutingTrace Network::route(const NodeId& x, const NodeId& y) const {
    std::size_t zi = trie_.index_of(x);
    if (y.d() != trie_.d()) throw DimensionError("target id length mismatch");
    NodeId y_star = closest_node(y);
    RoutingTrace trace;
    trace.target = y;
    for (;;) {
        const NodeId& z = trie_.leaf(zi);
        record_hop(trace, trie_, z, y_star);
        if (z == y_star) break;
        // Scan the union of this hop's buckets for the member nearest to y.
        std::size_t best = zi;
        for (const auto& bucket : tables_[zi]) {
            for (auto m : bucket) {
                if (compare_by_distance(trie_.leaf(m), trie_.leaf(best), y) ==
                    DistanceOrder::closer) {
                    best = m;
                }
            }
        }
        if (best == zi) throw Error("internal: greedy step failed to improve");
        zi = best;
    }
    return trace;
}

bool Network::strongly_connected() const {
    std::size_t n = trie_.n();
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto& bucket : tables_[u]) {
            for (auto v : bucket) rev[v].push_back(static_cast<std::uint32_t>(u));
        }
    }
    auto reaches_all = [n](auto&& neighbors) {
        std::vector<char> seen(n, 0);
        std::deque<std::size_t> queue{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    queue.push_back(v);
                }
            }
        }
        return count == n;
    };
    bool fwd = reaches_all([this](std::size_t u) {
        std::vector<std::size_t> out;
        for (const auto& bucket : tables_[u]) {
            for (auto v : bucket) out.push_back(v);
        }
        return out;
    });
    bool bwd = reaches_all([&rev](std::size_t u) {
        return std::vector<std::size_t>(rev[u].begin(), rev[u].end());
    });
    return fwd && bwd;
}

namespace {

// The descent of a lookup whose target is the all-ones id: repeatedly take
// the highest nonempty subtree to the right of the current leaf, sample up
// to k of its leaves, and jump to the rightmost sample.
RoutingTrace walk_toward_ones(const IdTrie& trie, std::size_t start, int k, RngStream& rng) {
    RoutingTrace trace;
    trace.target = NodeId::ones(trie.d());
    const NodeId& rm = trie.leaves().back();
    std::size_t zi = start;
    for (;;) {
        const NodeId& z = trie.leaf(zi);
        trace.hops.push_back(z);
        trace.hop_depths.push_back(common_prefix_len(z, rm));
        auto s = trie.highest_right_subtree(z);
        if (!s) {
            trace.subtree_sizes.push_back(0);
            break;
        }
        trace.subtree_sizes.push_back(s->size());
        auto picks = trie.sample_leaf_indices(*s, static_cast<std::size_t>(k), rng);
        zi = picks.back();
    }
    return trace;
}

}  // namespace

RoutingTrace simulate_routing_process(const IdTrie& trie, const NodeId& x, const NodeId& y, int k,
                                      RngStream& rng) {
    if (k < 1) throw DomainError("bucket capacity must be at least 1");
    if (y.d() != trie.d()) throw DimensionError("target id length mismatch");
    std::size_t xi = trie.index_of(x);
    if (y == NodeId::ones(trie.d())) return walk_toward_ones(trie, xi, k, rng);
    // Relabel so the target becomes the all-ones id, walk there, map back.
    IdTrie rotated = rotate_trie(trie, y);
    RoutingTrace trace = walk_toward_ones(rotated, rotated.index_of(rotate_id(x, y)), k, rng);
    trace.target = y;
    for (auto& hop : trace.hops) hop = rotate_id(hop, y);
    return trace;
}

std::vector<std::size_t> s_sequence(const RoutingTrace& trace) { return trace.subtree_sizes; }

}  // namespace kadlab
