#include "kadlab/id_trie.hpp"

#include <algorithm>

#include "kadlab/errors.hpp"

namespace kadlab {

void IdTrie::build(std::vector<NodeId> ids) {
    if (ids.empty()) throw DomainError("trie needs at least one id");
    d_ = ids.front().d();
    for (const auto& id : ids) {
        if (id.d() != d_) throw DimensionError("mixed id lengths in trie input");
    }
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (ids[i] == ids[i - 1]) throw DuplicateIdError("duplicate id: " + ids[i].to_display());
    }
    leaves_ = std::move(ids);
}

const NodeId& IdTrie::leaf(std::size_t i) const {
    if (i >= leaves_.size()) throw DomainError("leaf index out of range");
    return leaves_[i];
}

std::size_t IdTrie::lower_bound_index(const NodeId& key) const {
    auto it = std::lower_bound(leaves_.begin(), leaves_.end(), key);
    return static_cast<std::size_t>(it - leaves_.begin());
}

bool IdTrie::contains(const NodeId& x) const {
    std::size_t i = lower_bound_index(x);
    return i < leaves_.size() && leaves_[i] == x;
}

std::size_t IdTrie::index_of(const NodeId& x) const {
    std::size_t i = lower_bound_index(x);
    if (i >= leaves_.size() || !(leaves_[i] == x)) {
        throw MissingNodeError("id not in trie: " + x.to_display());
    }
    return i;
}

const NodeId& IdTrie::rightmost_leaf(const SubtreeRef& s) const {
    if (s.empty() || s.hi > leaves_.size()) throw EmptySubtreeError("empty subtree");
    return leaves_[s.hi - 1];
}

std::optional<SubtreeRef> IdTrie::highest_right_subtree(const NodeId& z) const {
    if (!contains(z)) throw MissingNodeError("id not in trie: " + z.to_display());
    const NodeId& rm = leaves_.back();
    if (z == rm) return std::nullopt;
    // z and the rightmost leaf agree on the first lm bits and z has a 0 where
    // rm has a 1 at position lm+1. The wanted subtree is everything under
    // prefix(z, lm) followed by a 1 bit, i.e. the tail of the leaf array.
    int lm = common_prefix_len(z, rm);
    NodeId key = z.with_bit(lm + 1, 1).prefix_floor(lm + 1);
    std::size_t lo = lower_bound_index(key);
    return SubtreeRef{lo, leaves_.size(), lm + 1};
}

std::optional<SubtreeRef> IdTrie::distance_class(const NodeId& x, int i) const {
    if (i < 1 || i > d_) throw DomainError("distance class index out of range");
    // Members at distance in [2^{d-i}, 2^{d-i+1}) share x's first d-i bits and
    // differ at bit d-i+1: the subtree under x's sibling prefix at that depth.
    int pos = d_ - i + 1;
    NodeId key_lo = x.with_bit(pos, 1 - x.bit(pos)).prefix_floor(pos);
    NodeId key_hi = x.with_bit(pos, 1 - x.bit(pos)).prefix_ceil(pos);
    std::size_t lo = lower_bound_index(key_lo);
    auto it = std::upper_bound(leaves_.begin(), leaves_.end(), key_hi);
    std::size_t hi = static_cast<std::size_t>(it - leaves_.begin());
    if (lo >= hi) return std::nullopt;
    return SubtreeRef{lo, hi, pos};
}

std::size_t IdTrie::closest_leaf_index(const NodeId& y) const {
    if (y.d() != d_) throw DimensionError("target id length mismatch");
    // Walk the trie from the root, preferring the child on y's side; when that
    // child is empty the metric forces the other side and the remaining bits
    // of y no longer influence the comparison within it, so the descent stays
    // greedy. Track the live leaf range and the forced prefix as we go.
    std::size_t lo = 0, hi = leaves_.size();
    NodeId prefix = y;
    for (int depth = 1; depth <= d_; ++depth) {
        if (hi - lo == 1) break;
        NodeId mid = prefix.with_bit(depth, 1).prefix_floor(depth);
        auto it = std::lower_bound(leaves_.begin() + static_cast<std::ptrdiff_t>(lo),
                                   leaves_.begin() + static_cast<std::ptrdiff_t>(hi), mid);
        std::size_t split = static_cast<std::size_t>(it - leaves_.begin());
        int want = prefix.bit(depth);
        if (want == 0) {
            if (split > lo) {
                hi = split;
            } else {
                lo = split;
                prefix = prefix.with_bit(depth, 1);
            }
        } else {
            if (split < hi) {
                lo = split;
            } else {
                hi = split;
                prefix = prefix.with_bit(depth, 0);
            }
        }
    }
    return lo;
}

std::vector<std::size_t> IdTrie::sample_leaf_indices(const SubtreeRef& s, std::size_t m,
                                                     RngStream& rng) const {
    if (s.empty() || s.hi > leaves_.size()) throw EmptySubtreeError("empty subtree");
    auto offs = sample_distinct(rng, s.size(), m);
    std::vector<std::size_t> out;
    out.reserve(offs.size());
    for (auto o : offs) out.push_back(s.lo + static_cast<std::size_t>(o));
    return out;
}

std::vector<NodeId> IdTrie::sample_leaves(const SubtreeRef& s, std::size_t m,
                                          RngStream& rng) const {
    auto idx = sample_leaf_indices(s, m, rng);
    std::vector<NodeId> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(leaves_[i]);
    return out;
}

SubtreeRef IdTrie::recount(const NodeId& prefix_owner, int depth) const {
    if (depth < 0 || depth > d_) throw DomainError("depth out of range");
    std::size_t lo = leaves_.size(), hi = 0;
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
        if (common_prefix_len(leaves_[i], prefix_owner) >= depth) {
            lo = std::min(lo, i);
            hi = i + 1;
        }
    }
    if (hi == 0) lo = 0;
    return {lo, hi, depth};
}

NodeId rotate_id(const NodeId& u, const NodeId& y) { return u.xored(y.complement()); }

IdTrie rotate_trie(const IdTrie& trie, const NodeId& y) {
    std::vector<NodeId> ids;
    ids.reserve(trie.n());
    for (const auto& leaf : trie.leaves()) ids.push_back(rotate_id(leaf, y));
    return IdTrie(std::move(ids));
}

}  // namespace kadlab
