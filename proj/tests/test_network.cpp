#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "kadlab/errors.hpp"
#include "kadlab/network.hpp"
#include "kadlab/node_id.hpp"
#include "kadlab/rng.hpp"

using namespace kadlab;

namespace {

std::vector<NodeId> ids_from_values(std::initializer_list<std::uint64_t> vals, int d) {
    std::vector<NodeId> out;
    for (auto v : vals) out.push_back(NodeId::from_value(v, d));
    return out;
}

std::vector<NodeId> full_space(int d) {
    std::vector<NodeId> out;
    for (std::uint64_t v = 0; v < (1ull << d); ++v) out.push_back(NodeId::from_value(v, d));
    return out;
}

std::vector<NodeId> random_distinct_ids(int d, std::size_t n, RngStream& rng) {
    std::set<std::uint64_t> vals;
    while (vals.size() < n) vals.insert(rng.below(1ull << d));
    std::vector<NodeId> out;
    for (auto v : vals) out.push_back(NodeId::from_value(v, d));
    return out;
}

std::vector<NodeId> example_ids() {
    return ids_from_values({0b00011, 0b01110, 0b10100, 0b11010, 0b11101}, 5);
}

void check_trace_invariants(const RoutingTrace& trace, const Network& net) {
    REQUIRE(trace.hops.size() >= 1);
    REQUIRE(trace.subtree_sizes.size() == trace.hops.size());
    REQUIRE(trace.hop_depths.size() == trace.hops.size());
    CHECK(trace.subtree_sizes.back() == 0);
    CHECK(trace.T() <= static_cast<std::size_t>(net.d()));
    // Strictly shrinking distance, nonincreasing candidate counts.
    for (std::size_t t = 0; t + 1 < trace.hops.size(); ++t) {
        CHECK(compare_by_distance(trace.hops[t + 1], trace.hops[t], trace.target) ==
              DistanceOrder::closer);
        CHECK(trace.subtree_sizes[t + 1] <= trace.subtree_sizes[t]);
        CHECK(trace.subtree_sizes[t] > 0);
    }
    CHECK(trace.hops.back() == net.closest_node(trace.target));
}

}  // namespace

TEST_CASE("bucket laws after build") {
    RngStream rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto ids = random_distinct_ids(8, 60, rng);
        int k = 1 + static_cast<int>(rng.below(4));
        Network net = Network::build(ids, k, rng);
        for (const auto& x : ids) {
            for (int i = 1; i <= net.d(); ++i) {
                auto members = net.bucket(x, i);
                auto cls = net.trie().distance_class(x, i);
                std::size_t class_size = cls ? cls->size() : 0;
                CHECK(members.size() == std::min<std::size_t>(k, class_size));
                std::set<std::uint64_t> seen;
                for (const auto& m : members) {
                    CHECK(bucket_index(x, m) == i);
                    CHECK(seen.insert(m.to_u64()).second);
                }
            }
        }
    }
    auto two = ids_from_values({0b00, 0b11}, 2);
    RngStream r2(1);
    Network tiny = Network::build(two, 3, r2);
    CHECK(tiny.bucket(two[0], 2).size() == 1);
    CHECK(tiny.bucket(two[0], 2)[0] == two[1]);
    CHECK(tiny.bucket(two[1], 2)[0] == two[0]);
    CHECK_THROWS_AS(tiny.bucket(two[0], 3), UndefinedBucketError);
    CHECK_THROWS_AS(tiny.bucket(NodeId::from_value(0b01, 2), 1), MissingNodeError);
    CHECK_THROWS_AS(Network::build(two, 0, r2), DomainError);
}

TEST_CASE("singleton buckets are uniform over their class") {
    // Complete d=3 trie with k=1: each bucket holds one member of its class,
    // each equally often across rebuilds.
    const int builds = 100000;
    auto ids = full_space(3);
    std::map<std::uint64_t, int> counts;  // bucket 3 of node 000 has 4 choices
    NodeId x = NodeId::from_value(0, 3);
    for (int b = 0; b < builds; ++b) {
        RngStream rng = RngStream::derive(77, stream_domain::trial, static_cast<std::uint64_t>(b));
        Network net = Network::build(ids, 1, rng);
        auto members = net.bucket(x, 3);
        REQUIRE(members.size() == 1);
        ++counts[members[0].to_u64()];
    }
    CHECK(counts.size() == 4);
    double expect = builds / 4.0;
    double sigma = std::sqrt(builds * 0.25 * 0.75);
    for (const auto& [v, c] : counts) {
        CHECK(v >= 4);  // class members all start with bit 1
        CHECK(std::abs(c - expect) <= 3 * sigma);
    }
}

TEST_CASE("closest node") {
    RngStream rng(32);
    auto ids = random_distinct_ids(10, 100, rng);
    Network net = Network::build(ids, 2, rng);
    CHECK(net.closest_node(ids[17]) == ids[17]);
    CHECK(net.closest_node(NodeId::ones(10)) == net.trie().rightmost_leaf(net.trie().root()));
    for (int trial = 0; trial < 200; ++trial) {
        NodeId y = NodeId::from_value(rng.below(1024), 10);
        NodeId best = ids[0];
        for (const auto& id : ids) {
            if (compare_by_distance(id, best, y) == DistanceOrder::closer) best = id;
        }
        CHECK(net.closest_node(y) == best);
    }
}

TEST_CASE("routing traces satisfy the contract") {
    RngStream rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 4 + static_cast<int>(rng.below(7));
        std::size_t n = 2 + rng.below(120);
        n = std::min<std::size_t>(n, (1ull << d) - 1);
        auto ids = random_distinct_ids(d, n, rng);
        int k = 1 + static_cast<int>(rng.below(3));
        Network net = Network::build(ids, k, rng);
        for (int probe = 0; probe < 5; ++probe) {
            NodeId x = ids[rng.below(ids.size())];
            NodeId y = probe % 2 == 0 ? ids[rng.below(ids.size())]
                                      : NodeId::from_value(rng.below(1ull << d), d);
            auto trace = net.route(x, y);
            check_trace_invariants(trace, net);
            CHECK(trace.hops.front() == x);
            CHECK(s_sequence(trace) == trace.subtree_sizes);
        }
    }
}

TEST_CASE("route edge cases") {
    RngStream rng(34);
    auto ids = example_ids();
    Network net = Network::build(ids, 2, rng);

    NodeId y = NodeId::from_value(0b01110, 5);
    auto stay = net.route(y, y);
    CHECK(stay.T() == 0);
    CHECK(stay.subtree_sizes == std::vector<std::size_t>{0});
    CHECK(stay.hop_depths == std::vector<int>{5});

    auto two = ids_from_values({0b000, 0b101}, 3);
    Network tiny = Network::build(two, 1, rng);
    auto hop = tiny.route(two[0], two[1]);
    CHECK(hop.T() == 1);

    CHECK_THROWS_AS(net.route(NodeId::from_value(0b11111, 5), y), MissingNodeError);
    CHECK_THROWS_AS(net.route(y, NodeId::ones(4)), DimensionError);
}

TEST_CASE("route agrees with a naive greedy walker") {
    // Replays the same tables with a walker that recomputes full distances.
    RngStream rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng.below(3));
        std::size_t n = 2 + rng.below(5);
        n = std::min<std::size_t>(n, 1ull << d);
        auto ids = random_distinct_ids(d, n, rng);
        Network net = Network::build(ids, 1, rng);
        NodeId x = ids[rng.below(ids.size())];
        NodeId y = NodeId::from_value(rng.below(1ull << d), d);
        auto trace = net.route(x, y);

        std::vector<NodeId> naive{x};
        for (;;) {
            const NodeId& z = naive.back();
            NodeId best = z;
            std::uint64_t best_dist = xor_distance(z, y).to_double();
            for (int i = 1; i <= d; ++i) {
                for (const auto& m : net.bucket(z, i)) {
                    std::uint64_t dm = xor_distance(m, y).to_double();
                    if (dm < best_dist) {
                        best = m;
                        best_dist = dm;
                    }
                }
            }
            if (best == z) break;
            naive.push_back(best);
        }
        REQUIRE(trace.hops.size() == naive.size());
        for (std::size_t t = 0; t < naive.size(); ++t) CHECK(trace.hops[t] == naive[t]);
    }
}

TEST_CASE("routing is invariant under relabeling") {
    // Build one network, translate its tables by xor, and require hop-for-hop
    // equal routes; the coupled tables realize the same randomness twice.
    RngStream rng(36);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 6;
        auto ids = random_distinct_ids(d, 40, rng);
        int k = 1 + static_cast<int>(rng.below(3));
        Network net = Network::build(ids, k, rng);
        NodeId c = NodeId::from_value(rng.below(1ull << d), d);

        std::vector<NodeId> shifted;
        for (const auto& id : ids) shifted.push_back(id.xored(c));
        IdTrie strie(shifted);
        std::vector<std::vector<std::vector<std::uint32_t>>> tables(
            strie.n(), std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(d)));
        for (std::size_t xi = 0; xi < net.n(); ++xi) {
            std::size_t sxi = strie.index_of(net.trie().leaf(xi).xored(c));
            for (int i = 1; i <= d; ++i) {
                for (auto m : net.bucket_indices(xi, i)) {
                    tables[sxi][static_cast<std::size_t>(i - 1)].push_back(
                        static_cast<std::uint32_t>(strie.index_of(net.trie().leaf(m).xored(c))));
                }
            }
        }
        Network snet = Network::from_tables(std::move(strie), k, std::move(tables));

        NodeId x = ids[rng.below(ids.size())];
        NodeId y = NodeId::from_value(rng.below(1ull << d), d);
        auto trace = net.route(x, y);
        auto strace = snet.route(x.xored(c), y.xored(c));
        REQUIRE(trace.hops.size() == strace.hops.size());
        for (std::size_t t = 0; t < trace.hops.size(); ++t) {
            CHECK(trace.hops[t].xored(c) == strace.hops[t]);
            CHECK(trace.hop_depths[t] == strace.hop_depths[t]);
            CHECK(trace.subtree_sizes[t] == strace.subtree_sizes[t]);
        }
    }
}

TEST_CASE("from_tables validates the fill law") {
    auto ids = example_ids();
    RngStream rng(37);
    Network net = Network::build(ids, 2, rng);
    std::vector<std::vector<std::vector<std::uint32_t>>> tables(5);
    for (std::size_t xi = 0; xi < 5; ++xi) {
        for (int i = 1; i <= 5; ++i) tables[xi].push_back(net.bucket_indices(xi, i));
    }
    auto good = tables;
    CHECK_NOTHROW(Network::from_tables(IdTrie(ids), 2, std::move(good)));

    auto wrong_size = tables;
    if (!wrong_size[0][4].empty()) wrong_size[0][4].pop_back();
    CHECK_THROWS_AS(Network::from_tables(IdTrie(ids), 2, std::move(wrong_size)), DomainError);

    auto wrong_class = tables;
    wrong_class[0][4][0] = 1;  // leaf 01110 is in class 4 of 00011, not 5
    CHECK_THROWS_AS(Network::from_tables(IdTrie(ids), 2, std::move(wrong_class)), DomainError);
}

TEST_CASE("strong connectivity") {
    RngStream rng(38);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 5 + static_cast<int>(rng.below(5));
        std::size_t n = 2 + rng.below(511);
        n = std::min<std::size_t>(n, 1ull << d);
        auto ids = random_distinct_ids(d, n, rng);
        int k = 1 + static_cast<int>(rng.below(3));
        Network net = Network::build(ids, k, rng);
        CHECK(net.strongly_connected());
    }
}

TEST_CASE("simulated process on the example instance") {
    auto ids = example_ids();
    IdTrie trie(ids);
    NodeId z0 = NodeId::from_value(0b10100, 5);
    NodeId ones = NodeId::ones(5);

    // k=2 exhausts the two-leaf candidate subtree, so the first hop is the
    // rightmost leaf itself.
    for (int t = 0; t < 50; ++t) {
        RngStream rng = RngStream::derive(5, stream_domain::trial, static_cast<std::uint64_t>(t));
        auto trace = simulate_routing_process(trie, z0, ones, 2, rng);
        CHECK(trace.T() == 1);
        CHECK(trace.hops[1] == NodeId::from_value(0b11101, 5));
        CHECK(trace.subtree_sizes[0] == 2);
    }

    // k=1 may land on 11010 first; then exactly one leaf remains to its right.
    bool saw_two_hop = false;
    for (int t = 0; t < 200; ++t) {
        RngStream rng = RngStream::derive(6, stream_domain::trial, static_cast<std::uint64_t>(t));
        auto trace = simulate_routing_process(trie, z0, ones, 1, rng);
        CHECK(trace.hops[1].to_u64() >= 0b11010);
        if (trace.T() == 2) {
            saw_two_hop = true;
            CHECK(trace.hops[1] == NodeId::from_value(0b11010, 5));
            CHECK(trace.subtree_sizes[1] == 1);
        }
    }
    CHECK(saw_two_hop);

    // Starting at the rightmost leaf terminates immediately.
    RngStream rng(39);
    auto idle = simulate_routing_process(trie, NodeId::from_value(0b11101, 5), ones, 2, rng);
    CHECK(idle.T() == 0);
}

TEST_CASE("simulated process matches built-network routing in distribution") {
    // d=4 complete trie, k=2: distribution of hop counts from the two engines
    // over 100000 trials each, compared in total variation.
    auto ids = full_space(4);
    NodeId x = NodeId::from_value(0, 4);
    NodeId y = NodeId::ones(4);
    const int trials = 100000;
    std::map<std::size_t, int> via_network, via_process;
    for (int t = 0; t < trials; ++t) {
        RngStream build_rng =
            RngStream::derive(91, stream_domain::trial, static_cast<std::uint64_t>(t));
        Network net = Network::build(ids, 2, build_rng);
        ++via_network[net.route(x, y).T()];
        RngStream sim_rng =
            RngStream::derive(92, stream_domain::trial, static_cast<std::uint64_t>(t));
        IdTrie trie(ids);
        ++via_process[simulate_routing_process(trie, x, y, 2, sim_rng).T()];
    }
    double tv = 0;
    std::set<std::size_t> support;
    for (const auto& [v, c] : via_network) support.insert(v);
    for (const auto& [v, c] : via_process) support.insert(v);
    for (auto v : support) {
        tv += std::abs(via_network[v] - via_process[v]) / static_cast<double>(trials);
    }
    tv /= 2;
    CHECK(tv < 0.02);
}

TEST_CASE("trimming: leaves right of each hop bound the next candidate set") {
    RngStream rng(40);
    for (int trial = 0; trial < 50; ++trial) {
        auto ids = random_distinct_ids(8, 50, rng);
        IdTrie trie(ids);
        NodeId x = trie.leaf(0);
        auto trace = simulate_routing_process(trie, x, NodeId::ones(8), 2, rng);
        for (std::size_t t = 0; t + 1 < trace.hops.size(); ++t) {
            std::size_t right_of_next = trie.n() - 1 - trie.index_of(trace.hops[t + 1]);
            CHECK(trace.subtree_sizes[t + 1] <= right_of_next);
        }
    }
}
