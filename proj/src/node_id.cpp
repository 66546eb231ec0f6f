#include "kadlab/node_id.hpp"

#include <algorithm>
#include <bit>

namespace kadlab {

void NodeId::check_d(int d) {
    if (d < 1 || d > max_d) {
        throw DimensionError("id length d must be in [1, " + std::to_string(max_d) +
                             "], got " + std::to_string(d));
    }
}

NodeId NodeId::zeros(int d) {
    check_d(d);
    NodeId x;
    x.d_ = d;
    return x;
}

NodeId NodeId::ones(int d) {
    check_d(d);
    NodeId x;
    x.d_ = d;
    for (int j = 0; j < n_limbs; ++j) {
        int lo = 64 * j;
        if (lo >= d) break;
        int count = std::min(64, d - lo);
        x.limbs_[j] = (count == 64) ? ~0ull : ((1ull << count) - 1);
    }
    return x;
}

NodeId NodeId::from_bits(const std::vector<int>& msb_first) {
    int d = static_cast<int>(msb_first.size());
    check_d(d);
    NodeId x;
    x.d_ = d;
    for (int p = 0; p < d; ++p) {
        int v = msb_first[p];
        if (v != 0 && v != 1) throw DomainError("id bits must be 0 or 1");
        if (v) {
            int b = d - 1 - p;
            x.limbs_[b / 64] |= 1ull << (b % 64);
        }
    }
    return x;
}

NodeId NodeId::from_value(std::uint64_t value, int d) {
    check_d(d);
    if (d < 64 && (value >> d) != 0) {
        throw DomainError("value does not fit in " + std::to_string(d) + " bits");
    }
    NodeId x;
    x.d_ = d;
    x.limbs_[0] = value;
    return x;
}

int NodeId::bit(int i) const {
    if (i < 1 || i > d_) throw DomainError("bit index out of range");
    int b = d_ - i;
    return static_cast<int>((limbs_[b / 64] >> (b % 64)) & 1ull);
}

std::vector<int> NodeId::bits() const {
    std::vector<int> out(d_);
    for (int i = 1; i <= d_; ++i) out[i - 1] = bit(i);
    return out;
}

NodeId NodeId::complement() const { return xored(ones(d_)); }

NodeId NodeId::xored(const NodeId& other) const {
    if (d_ != other.d_) throw DimensionError("xor of ids with different d");
    NodeId x;
    x.d_ = d_;
    for (int j = 0; j < n_limbs; ++j) x.limbs_[j] = limbs_[j] ^ other.limbs_[j];
    return x;
}

NodeId NodeId::with_bit(int i, int value) const {
    if (i < 1 || i > d_) throw DomainError("bit index out of range");
    if (value != 0 && value != 1) throw DomainError("bit value must be 0 or 1");
    NodeId x = *this;
    int b = d_ - i;
    if (value) {
        x.limbs_[b / 64] |= 1ull << (b % 64);
    } else {
        x.limbs_[b / 64] &= ~(1ull << (b % 64));
    }
    return x;
}

NodeId NodeId::prefix_floor(int len) const {
    if (len < 0 || len > d_) throw DomainError("prefix length out of range");
    NodeId x = *this;
    int clear = d_ - len;  // number of low bits to clear
    for (int j = 0; j < n_limbs; ++j) {
        int lo = 64 * j;
        if (lo + 64 <= clear) {
            x.limbs_[j] = 0;
        } else if (lo < clear) {
            x.limbs_[j] &= ~((1ull << (clear - lo)) - 1);
        }
    }
    return x;
}

NodeId NodeId::prefix_ceil(int len) const {
    if (len < 0 || len > d_) throw DomainError("prefix length out of range");
    NodeId x = *this;
    int fill = d_ - len;  // number of low bits to set
    for (int j = 0; j < n_limbs; ++j) {
        int lo = 64 * j;
        if (lo >= d_) break;
        if (lo + 64 <= fill) {
            x.limbs_[j] = ~0ull;
        } else if (lo < fill) {
            x.limbs_[j] |= (1ull << (fill - lo)) - 1;
        }
        // bits above d stay zero
        int count = std::min(64, d_ - lo);
        if (count < 64) x.limbs_[j] &= (1ull << count) - 1;
    }
    return x;
}

std::uint64_t NodeId::to_u64() const {
    if (d_ > 64) throw DomainError("id wider than 64 bits");
    return limbs_[0];
}

std::string NodeId::to_bin() const {
    std::string s(d_, '0');
    for (int i = 1; i <= d_; ++i) s[i - 1] = static_cast<char>('0' + bit(i));
    return s;
}

std::string NodeId::to_hex() const {
    if (d_ % 4 != 0) throw DomainError("hex rendering requires d divisible by 4");
    static const char* digits = "0123456789abcdef";
    std::string s(d_ / 4, '0');
    for (int g = 0; g < d_ / 4; ++g) {
        int v = (bit(4 * g + 1) << 3) | (bit(4 * g + 2) << 2) | (bit(4 * g + 3) << 1) |
                bit(4 * g + 4);
        s[g] = digits[v];
    }
    return s;
}

std::string NodeId::to_display() const { return (d_ % 4 == 0) ? to_hex() : to_bin(); }

namespace {
std::uint64_t hash_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace

std::size_t NodeIdHash::operator()(const NodeId& x) const {
    std::uint64_t h = static_cast<std::uint64_t>(x.d());
    for (auto limb : x.limbs()) h = hash_mix(h ^ limb);
    return static_cast<std::size_t>(h);
}

bool Distance::is_zero() const {
    for (auto limb : limbs) {
        if (limb) return false;
    }
    return true;
}

double Distance::to_double() const {
    double v = 0.0;
    for (int j = static_cast<int>(limbs.size()) - 1; j >= 0; --j) {
        v = v * 18446744073709551616.0 + static_cast<double>(limbs[j]);
    }
    return v;
}

std::string Distance::to_decimal() const {
    std::vector<std::uint64_t> v = limbs;
    auto all_zero = [&v] {
        for (auto x : v) {
            if (x) return false;
        }
        return true;
    };
    if (all_zero()) return "0";
    std::string out;
    while (!all_zero()) {
        unsigned __int128 rem = 0;
        for (int j = static_cast<int>(v.size()) - 1; j >= 0; --j) {
            unsigned __int128 cur = (rem << 64) | v[j];
            v[j] = static_cast<std::uint64_t>(cur / 10);
            rem = cur % 10;
        }
        out.push_back(static_cast<char>('0' + static_cast<int>(rem)));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool Distance::operator==(const Distance& o) const {
    std::size_t m = std::max(limbs.size(), o.limbs.size());
    for (std::size_t j = 0; j < m; ++j) {
        std::uint64_t a = j < limbs.size() ? limbs[j] : 0;
        std::uint64_t b = j < o.limbs.size() ? o.limbs[j] : 0;
        if (a != b) return false;
    }
    return true;
}

bool Distance::operator<(const Distance& o) const {
    std::size_t m = std::max(limbs.size(), o.limbs.size());
    for (std::size_t j = m; j-- > 0;) {
        std::uint64_t a = j < limbs.size() ? limbs[j] : 0;
        std::uint64_t b = j < o.limbs.size() ? o.limbs[j] : 0;
        if (a != b) return a < b;
    }
    return false;
}

Distance xor_distance(const NodeId& x, const NodeId& y) {
    if (x.d() != y.d()) throw DimensionError("xor_distance of ids with different d");
    NodeId z = x.xored(y);
    int nl = (x.d() + 63) / 64;
    Distance dist;
    dist.d = x.d();
    dist.limbs.assign(z.limbs().begin(), z.limbs().begin() + nl);
    return dist;
}

int common_prefix_len(const NodeId& x, const NodeId& y) {
    if (x.d() != y.d()) throw DimensionError("common_prefix_len of ids with different d");
    NodeId z = x.xored(y);
    for (int j = NodeId::n_limbs - 1; j >= 0; --j) {
        std::uint64_t limb = z.limbs()[j];
        if (limb) {
            int b = 64 * j + (63 - std::countl_zero(limb));
            return x.d() - 1 - b;
        }
    }
    return x.d();
}

int bucket_index(const NodeId& x, const NodeId& y) {
    if (x.d() != y.d()) throw DimensionError("bucket_index of ids with different d");
    if (x == y) throw UndefinedBucketError("bucket index undefined for y == x");
    return x.d() - common_prefix_len(x, y);
}

NodeId polar_opposite(const NodeId& x) { return x.complement(); }

DistanceOrder compare_by_distance(const NodeId& a, const NodeId& b, const NodeId& target) {
    if (a.d() != b.d() || a.d() != target.d()) {
        throw DimensionError("compare_by_distance of ids with different d");
    }
    if (a == b) return DistanceOrder::equal;
    // the distances a^t and b^t first differ at the highest set bit of a^b;
    // whichever id agrees with the target there is the closer one
    NodeId w = a.xored(b);
    for (int j = NodeId::n_limbs - 1; j >= 0; --j) {
        std::uint64_t limb = w.limbs()[j];
        if (limb) {
            int b_pos = 64 * j + (63 - std::countl_zero(limb));
            int i = a.d() - b_pos;  // msb-first index of the deciding bit
            return (a.bit(i) == target.bit(i)) ? DistanceOrder::closer : DistanceOrder::farther;
        }
    }
    return DistanceOrder::equal;  // unreachable, a != b
}

}  // namespace kadlab
