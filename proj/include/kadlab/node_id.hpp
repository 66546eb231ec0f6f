#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kadlab/errors.hpp"

namespace kadlab {

// A d-bit identifier x = (x_1, ..., x_d), most significant bit first.
// Stored as the integer value of the bit string in little-endian 64-bit
// limbs, so numeric order equals left-to-right leaf order in the id trie
// (branches for bit 1 are arranged to the right).
class NodeId {
public:
    static constexpr int max_d = 256;
    static constexpr int n_limbs = max_d / 64;

    NodeId() = default;

    static NodeId zeros(int d);
    static NodeId ones(int d);
    static NodeId from_bits(const std::vector<int>& msb_first);
    static NodeId from_value(std::uint64_t value, int d);

    int d() const { return d_; }
    bool valid() const { return d_ > 0; }

    // bit x_i, i in [1, d], most significant first
    int bit(int i) const;
    std::vector<int> bits() const;

    NodeId complement() const;
    NodeId xored(const NodeId& other) const;
    NodeId with_bit(int i, int value) const;
    // keep bits x_1..x_len and clear (or set) everything after them
    NodeId prefix_floor(int len) const;
    NodeId prefix_ceil(int len) const;

    std::uint64_t to_u64() const;   // requires d <= 64
    std::string to_bin() const;
    std::string to_hex() const;     // requires d divisible by 4
    std::string to_display() const; // hex when possible, else binary

    bool operator==(const NodeId& o) const { return d_ == o.d_ && limbs_ == o.limbs_; }
    bool operator!=(const NodeId& o) const { return !(*this == o); }

    // numeric order of the bit string; callers only compare same-d ids
    bool operator<(const NodeId& o) const {
        for (int j = n_limbs - 1; j >= 0; --j) {
            if (limbs_[j] != o.limbs_[j]) return limbs_[j] < o.limbs_[j];
        }
        return false;
    }

    const std::array<std::uint64_t, n_limbs>& limbs() const { return limbs_; }

private:
    static void check_d(int d);
    std::array<std::uint64_t, n_limbs> limbs_{};
    int d_ = 0;
};

struct NodeIdHash {
    std::size_t operator()(const NodeId& x) const;
};

// nonnegative integer below 2^d, little-endian 64-bit limbs
struct Distance {
    std::vector<std::uint64_t> limbs;
    int d = 0;

    bool is_zero() const;
    double to_double() const;     // rounds when d exceeds 53 bits
    std::string to_decimal() const;

    bool operator==(const Distance& o) const;
    bool operator<(const Distance& o) const;
    bool operator<=(const Distance& o) const { return *this == o || *this < o; }
};

enum class DistanceOrder { closer, equal, farther };

Distance xor_distance(const NodeId& x, const NodeId& y);
int common_prefix_len(const NodeId& x, const NodeId& y);
int bucket_index(const NodeId& x, const NodeId& y);
NodeId polar_opposite(const NodeId& x);

// order of a and b by xor distance to target, decided at the most
// significant bit where the two distances differ, so no wide integers
// are materialized
DistanceOrder compare_by_distance(const NodeId& a, const NodeId& b, const NodeId& target);

}  // namespace kadlab
