#include "kadlab/brute_force.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "kadlab/errors.hpp"
#include "kadlab/id_trie.hpp"

namespace kadlab {

namespace {

double binomial(std::size_t s, std::size_t m) {
    double c = 1;
    for (std::size_t i = 0; i < m; ++i) c = c * static_cast<double>(s - i) / (i + 1);
    return std::round(c);
}

// Advance a sorted combination of offsets in [0, s); false when exhausted.
bool next_combination(std::vector<std::size_t>& offs, std::size_t s) {
    std::size_t m = offs.size();
    for (std::size_t j = m; j-- > 0;) {
        if (offs[j] + (m - j) < s) {
            ++offs[j];
            for (std::size_t l = j + 1; l < m; ++l) offs[l] = offs[l - 1] + 1;
            return true;
        }
    }
    return false;
}

struct Enumerator {
    const IdTrie& trie;
    const NodeId& y;
    std::size_t star;
    int k;
    double cap_product = 1;
    std::unordered_map<std::size_t, std::map<int, double>> memo;

    const std::map<int, double>& pmf(std::size_t zi) {
        auto found = memo.find(zi);
        if (found != memo.end()) return found->second;
        std::map<int, double> out;
        if (zi == star) {
            out[0] = 1.0;
            return memo.emplace(zi, std::move(out)).first->second;
        }
        const NodeId& z = trie.leaf(zi);
        auto cls = trie.distance_class(z, trie.d() - common_prefix_len(z, trie.leaf(star)));
        if (!cls) throw Error("internal: consulted class is empty");
        std::size_t s = cls->size();
        std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), s);
        double c = binomial(s, m);
        cap_product *= c;
        if (cap_product > 1e6) throw InfeasibleError("bucket subset enumeration exceeds 1e6");

        // Every equally likely subset of the consulted class, each followed
        // by the greedy jump to its member nearest y.
        std::vector<std::size_t> offs(m);
        std::iota(offs.begin(), offs.end(), 0);
        double w = 1.0 / c;
        do {
            std::size_t best = cls->lo + offs[0];
            for (std::size_t j = 1; j < m; ++j) {
                std::size_t cand = cls->lo + offs[j];
                if (compare_by_distance(trie.leaf(cand), trie.leaf(best), y) ==
                    DistanceOrder::closer) {
                    best = cand;
                }
            }
            for (const auto& [t, p] : pmf(best)) out[t + 1] += w * p;
        } while (next_combination(offs, s));
        return memo.emplace(zi, std::move(out)).first->second;
    }
};

}  // namespace

std::map<int, double> brute_force_t_distribution(const std::vector<NodeId>& ids, int k,
                                                 const NodeId& x, const NodeId& y) {
    if (k < 1) throw DomainError("bucket capacity must be at least 1");
    IdTrie trie(ids);
    if (y.d() != trie.d()) throw DimensionError("target id length mismatch");
    std::size_t xi = trie.index_of(x);
    Enumerator en{trie, y, trie.closest_leaf_index(y), k};
    return en.pmf(xi);
}

}  // namespace kadlab
