#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kadlab/errors.hpp"
#include "kadlab/id_text.hpp"
#include "kadlab/node_id.hpp"
#include "kadlab/rng.hpp"

using namespace kadlab;

namespace {

NodeId bits(std::initializer_list<int> v) { return NodeId::from_bits(std::vector<int>(v)); }

std::uint64_t dist64(const NodeId& a, const NodeId& b) { return xor_distance(a, b).to_double(); }

}  // namespace

TEST_CASE("xor distance basics") {
    CHECK(dist64(bits({1, 0, 0}), bits({1, 1, 1})) == 3);
    CHECK(dist64(bits({0, 0, 0}), bits({1, 0, 0})) == 4);
    CHECK(xor_distance(bits({1, 0, 1}), bits({1, 0, 1})).is_zero());
    CHECK(dist64(bits({1, 1, 1}), bits({1, 0, 0})) == 3);  // symmetric
    CHECK_THROWS_AS(xor_distance(bits({1, 0}), bits({1, 0, 0})), DimensionError);
}

TEST_CASE("metric axioms on random triples") {
    RngStream rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        int d = 1 + static_cast<int>(rng.below(16));
        NodeId x = NodeId::from_value(rng.below(1ull << d), d);
        NodeId y = NodeId::from_value(rng.below(1ull << d), d);
        NodeId z = NodeId::from_value(rng.below(1ull << d), d);
        auto dxy = dist64(x, y);
        CHECK((dxy == 0) == (x == y));
        CHECK(dxy == dist64(y, x));
        CHECK(dist64(x, z) <= dxy + dist64(y, z));
    }
}

TEST_CASE("common prefix length") {
    CHECK(common_prefix_len(bits({1, 0, 0}), bits({1, 1, 1})) == 1);
    CHECK(common_prefix_len(bits({1, 0, 0}), bits({1, 0, 0})) == 3);
    CHECK(common_prefix_len(bits({0, 1, 1, 0, 0}), bits({0, 1, 1, 0, 1})) == 4);
    CHECK(common_prefix_len(bits({0, 1}), bits({1, 1})) == 0);
    CHECK_THROWS_AS(common_prefix_len(bits({1}), bits({1, 1})), DimensionError);
}

TEST_CASE("distance versus prefix bound") {
    // 2^{d-l-1} <= delta < 2^{d-l} for every distinct pair; exhaustive at
    // small d, sampled at d = 128 and 160.
    for (int d = 1; d <= 6; ++d) {
        for (std::uint64_t a = 0; a < (1ull << d); ++a) {
            for (std::uint64_t b = 0; b < (1ull << d); ++b) {
                if (a == b) continue;
                NodeId x = NodeId::from_value(a, d);
                NodeId y = NodeId::from_value(b, d);
                int l = common_prefix_len(x, y);
                auto delta = dist64(x, y);
                CHECK(delta >= (1ull << (d - l - 1)));
                CHECK(delta < (1ull << (d - l)));
            }
        }
    }
    RngStream rng(12);
    for (int d : {128, 160}) {
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<int> va(d), vb(d);
            for (int i = 0; i < d; ++i) {
                va[i] = static_cast<int>(rng.below(2));
                vb[i] = static_cast<int>(rng.below(2));
            }
            NodeId x = NodeId::from_bits(va);
            NodeId y = NodeId::from_bits(vb);
            if (x == y) continue;
            int l = common_prefix_len(x, y);
            Distance delta = xor_distance(x, y);
            Distance lo = xor_distance(NodeId::zeros(d),
                                       NodeId::zeros(d).with_bit(l + 1, 1));
            CHECK(lo <= delta);
            if (l >= 1) {
                Distance hi_bound =
                    xor_distance(NodeId::zeros(d), NodeId::zeros(d).with_bit(l, 1));
                CHECK(delta < hi_bound);
            }
        }
    }
}

TEST_CASE("bucket index") {
    CHECK(bucket_index(bits({1, 0, 0}), bits({1, 1, 1})) == 2);
    CHECK(bucket_index(bits({1, 0, 0}), bits({1, 0, 1})) == 1);
    CHECK(bucket_index(bits({1, 0, 0}), bits({0, 0, 0})) == 3);
    CHECK_THROWS_AS(bucket_index(bits({1, 0, 0}), bits({1, 0, 0})), UndefinedBucketError);

    // Both definitions coincide: i = d - l(x,y) and 2^{i-1} <= delta < 2^i.
    for (std::uint64_t a = 0; a < 32; ++a) {
        for (std::uint64_t b = 0; b < 32; ++b) {
            if (a == b) continue;
            NodeId x = NodeId::from_value(a, 5);
            NodeId y = NodeId::from_value(b, 5);
            int i = bucket_index(x, y);
            CHECK(i == 5 - common_prefix_len(x, y));
            auto delta = dist64(x, y);
            CHECK((1ull << (i - 1)) <= delta);
            CHECK(delta < (1ull << i));
        }
    }
}

TEST_CASE("polar opposite") {
    CHECK(polar_opposite(bits({1, 0, 0})) == bits({0, 1, 1}));
    CHECK(polar_opposite(NodeId::zeros(7)) == NodeId::ones(7));
    NodeId x = NodeId::from_value(0b1011001, 7);
    CHECK(polar_opposite(polar_opposite(x)) == x);
    CHECK(dist64(x, polar_opposite(x)) == (1ull << 7) - 1);
}

TEST_CASE("compare_by_distance matches xor_distance exhaustively at d=3") {
    CHECK(compare_by_distance(bits({1, 1, 1}), bits({1, 0, 1}), bits({1, 1, 1})) ==
          DistanceOrder::closer);
    CHECK(compare_by_distance(bits({0, 1, 0}), bits({0, 1, 0}), bits({1, 1, 1})) ==
          DistanceOrder::equal);
    for (std::uint64_t a = 0; a < 8; ++a) {
        for (std::uint64_t b = 0; b < 8; ++b) {
            for (std::uint64_t t = 0; t < 8; ++t) {
                NodeId na = NodeId::from_value(a, 3);
                NodeId nb = NodeId::from_value(b, 3);
                NodeId nt = NodeId::from_value(t, 3);
                auto da = dist64(na, nt);
                auto db = dist64(nb, nt);
                auto want = da < db  ? DistanceOrder::closer
                            : da > db ? DistanceOrder::farther
                                      : DistanceOrder::equal;
                CHECK(compare_by_distance(na, nb, nt) == want);
            }
        }
    }
    CHECK_THROWS_AS(compare_by_distance(bits({1}), bits({1}), bits({1, 0})), DimensionError);
}

TEST_CASE("node id construction and access") {
    CHECK_THROWS_AS(NodeId::from_value(0, 0), DimensionError);
    CHECK_THROWS_AS(NodeId::zeros(257), DimensionError);
    CHECK_THROWS_AS(NodeId::from_value(4, 2), DomainError);
    CHECK_THROWS_AS(NodeId::from_bits({0, 2}), DomainError);

    NodeId x = bits({1, 0, 1, 1, 0});
    CHECK(x.d() == 5);
    CHECK(x.bit(1) == 1);
    CHECK(x.bit(2) == 0);
    CHECK(x.bit(5) == 0);
    CHECK(x.bits() == std::vector<int>{1, 0, 1, 1, 0});
    CHECK(x.to_u64() == 0b10110);
    CHECK(x.to_bin() == "10110");

    CHECK(x.with_bit(2, 1) == bits({1, 1, 1, 1, 0}));
    CHECK(x.with_bit(1, 0) == bits({0, 0, 1, 1, 0}));
    CHECK(x.prefix_floor(2) == bits({1, 0, 0, 0, 0}));
    CHECK(x.prefix_ceil(2) == bits({1, 0, 1, 1, 1}));
    CHECK(x.complement() == bits({0, 1, 0, 0, 1}));
}

TEST_CASE("wide ids and decimal distances") {
    NodeId lo = NodeId::zeros(160);
    NodeId hi = NodeId::ones(160);
    Distance delta = xor_distance(lo, hi);
    CHECK(delta.to_decimal() == "1461501637330902918203684832716283019655932542975");
    CHECK(xor_distance(lo, lo).to_decimal() == "0");
    NodeId mid = NodeId::zeros(160).with_bit(1, 1);
    CHECK(xor_distance(lo, mid) < delta);
    CHECK(hi.to_hex() == std::string(40, 'f'));
}

TEST_CASE("ordering follows numeric value") {
    RngStream rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t a = rng.below(1ull << 20);
        std::uint64_t b = rng.below(1ull << 20);
        CHECK((NodeId::from_value(a, 20) < NodeId::from_value(b, 20)) == (a < b));
    }
}

TEST_CASE("id text parsing") {
    CHECK(parse_id("10110", 5) == bits({1, 0, 1, 1, 0}));
    CHECK(parse_id("a3", 8).to_hex() == "a3");
    CHECK(parse_id("0110") == bits({0, 1, 1, 0}));        // all binary digits
    CHECK(parse_id("23").d() == 8);                       // hex fallback
    CHECK(parse_id("1010", 4) == bits({1, 0, 1, 0}));     // length-d binary wins
    CHECK_THROWS_AS(parse_id("10f", 5), DomainError);     // neither form fits d=5
    CHECK_THROWS_AS(parse_id("zz"), DomainError);
    CHECK_THROWS_AS(parse_id(""), DomainError);

    std::string text = "# comment\n00011\n01110\n\n10100\n";
    auto ids = parse_ids_text(text, std::nullopt);
    REQUIRE(ids.size() == 3);
    CHECK(ids[0] == bits({0, 0, 0, 1, 1}));
    CHECK(ids[2] == bits({1, 0, 1, 0, 0}));

    // First id fixes d; a later line of the wrong length is rejected with
    // its line number.
    try {
        parse_ids_text("00011\n111\n", std::nullopt);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    CHECK(format_ids(ids) == "00011\n01110\n10100\n");
    CHECK_THROWS_AS(parse_ids_file("/nonexistent/ids.txt", std::nullopt), Error);
}

TEST_CASE("rng streams are stable and independent of call order") {
    auto a1 = RngStream::derive(42, stream_domain::trial, 0);
    auto a2 = RngStream::derive(42, stream_domain::trial, 0);
    CHECK(a1.next_u64() == a2.next_u64());
    auto b = RngStream::derive(42, stream_domain::trial, 1);
    auto c = RngStream::derive(43, stream_domain::trial, 0);
    auto first = RngStream::derive(42, stream_domain::trial, 0).next_u64();
    CHECK(b.next_u64() != first);
    CHECK(c.next_u64() != first);

    RngStream u(7);
    for (int i = 0; i < 1000; ++i) {
        double v = u.uniform01();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        CHECK(u.below(10) < 10);
    }

    RngStream s(9);
    auto sample = sample_distinct(s, 10, 4);
    CHECK(sample.size() == 4);
    for (std::size_t i = 1; i < sample.size(); ++i) CHECK(sample[i - 1] < sample[i]);
    auto all = sample_distinct(s, 6, 99);
    CHECK(all == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
}
