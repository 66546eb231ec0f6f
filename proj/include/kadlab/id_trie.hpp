#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kadlab/node_id.hpp"
#include "kadlab/rng.hpp"

namespace kadlab {

// A subtree of the id trie, identified by the half-open leaf range it spans
// and the length of the common prefix that defines it. The root has depth 0
// and spans everything.
struct SubtreeRef {
    std::size_t lo = 0;
    std::size_t hi = 0;
    int depth = 0;

    std::size_t size() const { return hi - lo; }
    bool empty() const { return hi <= lo; }
    bool operator==(const SubtreeRef&) const = default;
};

// Binary trie over a fixed set of distinct d-bit ids, stored implicitly as a
// sorted leaf array. Every subtree is a contiguous range of leaves, so all
// structural queries reduce to binary searches.
class IdTrie {
public:
    IdTrie() = default;
    explicit IdTrie(std::vector<NodeId> ids) { build(std::move(ids)); }

    std::size_t n() const { return leaves_.size(); }
    int d() const { return d_; }

    const NodeId& leaf(std::size_t i) const;
    const std::vector<NodeId>& leaves() const { return leaves_; }
    SubtreeRef root() const { return {0, leaves_.size(), 0}; }

    bool contains(const NodeId& x) const;
    // Index of x in leaf order; MissingNodeError if absent.
    std::size_t index_of(const NodeId& x) const;

    // Largest leaf of the given subtree.
    const NodeId& rightmost_leaf(const SubtreeRef& s) const;

    // The subtree hanging off the deepest point where the path to z leaves the
    // path to the overall rightmost leaf on the 1-side. Absent exactly when z
    // is the rightmost leaf itself.
    std::optional<SubtreeRef> highest_right_subtree(const NodeId& z) const;

    // Leaves whose xor distance from x lies in [2^{d-i}, 2^{d-i+1}); these are
    // exactly the members sharing a length-(d-i) prefix with x and differing
    // at bit d-i+1. Empty optional when no member falls in the class.
    std::optional<SubtreeRef> distance_class(const NodeId& x, int i) const;

    // Leaf index closest to y in xor distance (y need not be a member).
    std::size_t closest_leaf_index(const NodeId& y) const;

    // m distinct leaves drawn uniformly from the subtree, in index order.
    std::vector<std::size_t> sample_leaf_indices(const SubtreeRef& s, std::size_t m,
                                                 RngStream& rng) const;
    std::vector<NodeId> sample_leaves(const SubtreeRef& s, std::size_t m, RngStream& rng) const;

    // Recompute a subtree's leaf range from its defining prefix alone.
    // Used by tests to cross-check range arithmetic.
    SubtreeRef recount(const NodeId& prefix_owner, int depth) const;

private:
    void build(std::vector<NodeId> ids);
    // First leaf index with leaf >= key.
    std::size_t lower_bound_index(const NodeId& key) const;

    std::vector<NodeId> leaves_;
    int d_ = 0;
};

// xor-translate u by the complement of y: the bijection that maps y to the
// all-ones id while preserving xor distances and prefix structure.
NodeId rotate_id(const NodeId& u, const NodeId& y);
IdTrie rotate_trie(const IdTrie& trie, const NodeId& y);

inline int lca_depth(const NodeId& a, const NodeId& b) { return common_prefix_len(a, b); }

}  // namespace kadlab
