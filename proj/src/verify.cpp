#include "kadlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "kadlab/brute_force.hpp"
#include "kadlab/checks.hpp"
#include "kadlab/constants.hpp"
#include "kadlab/dominance.hpp"
#include "kadlab/errors.hpp"
#include "kadlab/experiment.hpp"
#include "kadlab/id_trie.hpp"
#include "kadlab/network.hpp"
#include "kadlab/rng.hpp"
#include "kadlab/samplers.hpp"

namespace kadlab {

namespace {

std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[768];
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

NodeId random_id(int d, RngStream& rng) {
    if (d < 64) return NodeId::from_value(rng.below(std::uint64_t{1} << d), d);
    std::vector<int> bits(d);
    for (int i = 0; i < d; i += 64) {
        std::uint64_t w = rng.next_u64();
        for (int j = 0; j < 64 && i + j < d; ++j) bits[i + j] = static_cast<int>((w >> j) & 1);
    }
    return NodeId::from_bits(bits);
}

double tv_distance(const std::map<int, double>& p, const std::map<int, double>& q) {
    std::set<int> support;
    for (const auto& [t, _] : p) support.insert(t);
    for (const auto& [t, _] : q) support.insert(t);
    double tv = 0;
    for (int t : support) {
        double pv = p.count(t) ? p.at(t) : 0.0;
        double qv = q.count(t) ? q.at(t) : 0.0;
        tv += std::fabs(pv - qv);
    }
    return tv / 2;
}

// ---- metric ----------------------------------------------------------------

CheckResult metric_axioms(std::uint64_t budget, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, 1, 0);
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget, 1000, 2000000);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const int d = 1 + static_cast<int>(rng.below(63));
        const NodeId x = random_id(d, rng);
        const NodeId y = random_id(d, rng);
        const NodeId z = random_id(d, rng);
        const std::uint64_t dxy = x.xored(y).to_u64();
        const std::uint64_t dxz = x.xored(z).to_u64();
        const std::uint64_t dyz = y.xored(z).to_u64();
        if ((dxy == 0) != (x == y)) ++bad;
        if (dxy != y.xored(x).to_u64()) ++bad;
        if (dxz > dxy + dyz) ++bad;
    }
    CheckResult r;
    r.name = "xor-metric-axioms";
    r.pass = bad == 0;
    r.detail = fmt("%llu random triples at d <= 63: %llu violations",
                   static_cast<unsigned long long>(reps), static_cast<unsigned long long>(bad));
    return r;
}

CheckResult prefix_distance_certificate(std::uint64_t budget, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, 1, 1);
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget / 2, 1000, 1000000);
    const int dims[] = {8, 64, 160};
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const int d = dims[i % 3];
        const NodeId x = random_id(d, rng);
        NodeId y = random_id(d, rng);
        if (x == y) y = polar_opposite(y);
        const int l = common_prefix_len(x, y);
        // distance sits in [2^(d-l-1), 2^(d-l)): the xor's top set bit is
        // exactly at position l+1 and everything above it is zero
        const NodeId diff = x.xored(y);
        bool ok = diff.bit(l + 1) == 1;
        for (int b = 1; b <= l && ok; ++b) ok = diff.bit(b) == 0;
        if (!ok) ++bad;
        if (bucket_index(x, y) != d - l) ++bad;
    }
    CheckResult r;
    r.name = "prefix-distance-certificate";
    r.pass = bad == 0;
    r.detail = fmt("%llu pairs at d in {8, 64, 160}: %llu violations",
                   static_cast<unsigned long long>(reps), static_cast<unsigned long long>(bad));
    return r;
}

CheckResult distance_order_consistency(std::uint64_t budget, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, 1, 2);
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget / 2, 1000, 1000000);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const int d = 1 + static_cast<int>(rng.below(60));
        const NodeId a = random_id(d, rng);
        const NodeId b = random_id(d, rng);
        const NodeId t = random_id(d, rng);
        const std::uint64_t da = a.xored(t).to_u64();
        const std::uint64_t db = b.xored(t).to_u64();
        const DistanceOrder order = compare_by_distance(a, b, t);
        const DistanceOrder expect = da < db      ? DistanceOrder::closer
                                     : da == db   ? DistanceOrder::equal
                                                  : DistanceOrder::farther;
        if (order != expect) ++bad;
        const Distance wide = xor_distance(a, t);
        if (wide.to_double() != static_cast<double>(da) && d <= 53) ++bad;
    }
    CheckResult r;
    r.name = "distance-order-consistency";
    r.pass = bad == 0;
    r.detail = fmt("%llu ordered comparisons: %llu disagreements",
                   static_cast<unsigned long long>(reps), static_cast<unsigned long long>(bad));
    return r;
}

// ---- trie ------------------------------------------------------------------

CheckResult improving_range_law(std::uint64_t budget, std::uint64_t seed) {
    const std::uint64_t instances = std::clamp<std::uint64_t>(budget / 2000, 20, 500);
    IdSourceSpec uniform{IdSourceKind::random_without_replacement, "", 0, ""};
    std::uint64_t bad = 0, leaves = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        RngStream rng = RngStream::derive(seed, 2, i);
        const int d = 3 + static_cast<int>(rng.below(10));
        const std::uint64_t cap = std::min<std::uint64_t>(200, std::uint64_t{1} << d);
        const std::uint64_t n = 2 + rng.below(cap - 1);
        const IdTrie trie(generate_ids(uniform, n, d, rng));
        const NodeId ones = polar_opposite(NodeId::from_value(0, d));
        const NodeId& rightmost = trie.leaf(trie.n() - 1);
        for (std::size_t li = 0; li < trie.n(); ++li) {
            ++leaves;
            const NodeId& z = trie.leaf(li);
            const auto s = trie.highest_right_subtree(z);
            if (s.has_value() != !(z == rightmost)) {
                ++bad;
                continue;
            }
            if (!s) continue;
            const int lm = common_prefix_len(z, rightmost);
            const auto cls = trie.distance_class(z, trie.d() - lm);
            if (!cls || !(*cls == *s)) ++bad;
            for (std::size_t m = s->lo; m < s->hi; ++m) {
                const NodeId& u = trie.leaf(m);
                if (compare_by_distance(u, z, ones) != DistanceOrder::closer) ++bad;
            }
        }
    }
    CheckResult r;
    r.name = "improving-range-law";
    r.pass = bad == 0;
    r.detail = fmt("%llu tries, %llu leaves: %llu violations",
                   static_cast<unsigned long long>(instances),
                   static_cast<unsigned long long>(leaves), static_cast<unsigned long long>(bad));
    return r;
}

CheckResult closest_leaf_agreement(std::uint64_t budget, std::uint64_t seed) {
    const std::uint64_t probes = std::clamp<std::uint64_t>(budget / 10, 500, 50000);
    IdSourceSpec uniform{IdSourceKind::random_without_replacement, "", 0, ""};
    std::uint64_t bad = 0;
    RngStream rng = RngStream::derive(seed, 2, 1000001);
    const int d = 12;
    const IdTrie trie(generate_ids(uniform, 300, d, rng));
    for (std::uint64_t i = 0; i < probes; ++i) {
        const NodeId y = random_id(d, rng);
        const NodeId& got = trie.leaf(trie.closest_leaf_index(y));
        NodeId best = trie.leaf(0);
        for (std::size_t m = 1; m < trie.n(); ++m) {
            if (compare_by_distance(trie.leaf(m), best, y) == DistanceOrder::closer) {
                best = trie.leaf(m);
            }
        }
        if (!(got == best)) ++bad;
    }
    CheckResult r;
    r.name = "closest-leaf-agreement";
    r.pass = bad == 0;
    r.detail = fmt("%llu probes against a linear scan: %llu disagreements",
                   static_cast<unsigned long long>(probes), static_cast<unsigned long long>(bad));
    return r;
}

CheckResult rotation_involution(std::uint64_t budget, std::uint64_t seed) {
    const std::uint64_t instances = std::clamp<std::uint64_t>(budget / 5000, 10, 200);
    IdSourceSpec uniform{IdSourceKind::random_without_replacement, "", 0, ""};
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        RngStream rng = RngStream::derive(seed, 2, 2000000 + i);
        const int d = 2 + static_cast<int>(rng.below(12));
        const std::uint64_t cap = std::min<std::uint64_t>(64, std::uint64_t{1} << d);
        const std::uint64_t n = 2 + rng.below(cap - 1);
        const auto ids = generate_ids(uniform, n, d, rng);
        const NodeId y = random_id(d, rng);
        for (const auto& u : ids) {
            if (!(rotate_id(rotate_id(u, y), y) == u)) ++bad;
            if (!(rotate_id(u, u) == polar_opposite(NodeId::from_value(0, d)))) ++bad;
        }
        for (std::size_t a = 0; a + 1 < ids.size(); ++a) {
            if (common_prefix_len(ids[a], ids[a + 1]) !=
                common_prefix_len(rotate_id(ids[a], y), rotate_id(ids[a + 1], y))) {
                ++bad;
            }
        }
    }
    CheckResult r;
    r.name = "rotation-involution";
    r.pass = bad == 0;
    r.detail = fmt("%llu instances: %llu violations", static_cast<unsigned long long>(instances),
                   static_cast<unsigned long long>(bad));
    return r;
}

// ---- dominance -------------------------------------------------------------

CheckResult range_shrink_dominance_small(std::uint64_t budget, std::uint64_t seed) {
    const std::uint64_t n = 2048;
    const int d = 16, k = 4, t_max = 3;
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget, 2000, 200000);

    RngStream id_rng = RngStream::derive(seed, stream_domain::ids_once, 0);
    IdSourceSpec uniform{IdSourceKind::random_without_replacement, "", 0, ""};
    const IdTrie trie(generate_ids(uniform, n, d, id_rng));
    const NodeId x = trie.leaf(0);
    const NodeId y = polar_opposite(NodeId::from_value(0, d));

    std::vector<std::vector<double>> s_samples(t_max), w_samples(t_max);
    double s0 = -1;
    for (std::uint64_t i = 0; i < reps; ++i) {
        RngStream rng = RngStream::derive(seed, stream_domain::trial, i);
        const RoutingTrace trace = simulate_routing_process(trie, x, y, k, rng);
        if (s0 < 0) s0 = static_cast<double>(trace.subtree_sizes[0]);
        for (int t = 1; t <= t_max; ++t) {
            const auto idx = static_cast<std::size_t>(t);
            s_samples[t - 1].push_back(
                idx < trace.subtree_sizes.size() ? static_cast<double>(trace.subtree_sizes[idx])
                                                 : 0.0);
        }
    }
    for (std::uint64_t i = 0; i < reps; ++i) {
        RngStream rng = RngStream::derive(seed, stream_domain::walk_b, i);
        double w = s0;
        for (int t = 1; t <= t_max; ++t) {
            w *= sample_beta_min(k, rng);
            w_samples[t - 1].push_back(w);
        }
    }
    int bad = 0;
    double worst = -1;
    for (int t = 1; t <= t_max; ++t) {
        const auto rep = dominance_test(s_samples[t - 1], w_samples[t - 1], 0.99);
        if (!rep.pass) ++bad;
        worst = std::max(worst, rep.max_gap - rep.slack);
    }
    CheckResult r;
    r.name = "range-shrink-dominance";
    r.pass = bad == 0;
    r.detail = fmt("n=2048 k=4, t=1..3 x %llu trials: %d failing t, worst margin %+.5f (<0 passes)",
                   static_cast<unsigned long long>(reps), bad, worst);
    return r;
}

CheckResult dominance_negative_control(std::uint64_t budget, std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, 3, 0);
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget / 10, 1000, 50000);
    std::vector<double> a, b;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const double u = rng.uniform01();
        a.push_back(u);
        b.push_back(u);
    }
    const auto same = dominance_test(a, a, 0.99);
    for (auto& v : b) v += 1.0;
    const auto shifted_up = dominance_test(a, b, 0.99);    // a clearly smaller: must pass
    const auto shifted_down = dominance_test(b, a, 0.99);  // reversed: must fail
    CheckResult r;
    r.name = "dominance-controls";
    r.pass = same.pass && shifted_up.pass && !shifted_down.pass;
    r.detail = fmt("identical %s, dominated %s, reversed correctly rejected %s",
                   same.pass ? "pass" : "FAIL", shifted_up.pass ? "pass" : "FAIL",
                   !shifted_down.pass ? "yes" : "no");
    return r;
}

CheckResult dkw_width_sanity(std::uint64_t, std::uint64_t) {
    const double e1 = dkw_epsilon(10000, 0.99);
    const double e2 = dkw_epsilon(40000, 0.99);
    const bool quarter = std::fabs(e2 - e1 / 2) < 1e-15;
    const bool monotone = dkw_epsilon(10000, 0.999) > e1 && e1 > dkw_epsilon(10000, 0.5);
    CheckResult r;
    r.name = "dkw-width-shape";
    r.pass = quarter && monotone;
    r.detail = fmt("eps(1e4) = %.6f, eps(4e4) = %.6f, halving %s, confidence monotone %s", e1, e2,
                   quarter ? "exact" : "off", monotone ? "ok" : "violated");
    return r;
}

// ---- tails -----------------------------------------------------------------

CheckResult tail_alignment_small(std::uint64_t budget, std::uint64_t seed) {
    ExperimentConfig c;
    c.model = Model::deterministic_ids;
    c.id_source.kind = IdSourceKind::sequential;
    c.n = 256;
    c.d = 8;
    c.k = 2;
    c.trials = std::clamp<std::uint64_t>(budget, 2000, 200000);
    c.master_seed = seed;
    c.measurement = Measurement::t_polar;

    std::vector<int> ts;
    for (int t = 1; t <= 10; ++t) ts.push_back(t);
    const TailComparisonTable table = tail_comparison(c, ts);
    const double eps = dkw_epsilon(c.trials, 0.99);
    int align_bad = 0, analytic_bad = 0;
    double worst = -1;
    for (const auto& row : table.rows) {
        const double margin = row.t_tail - (row.w_tail_prev + table.slack);
        if (margin > 0) ++align_bad;
        worst = std::max(worst, margin);
        if (row.analytic < row.w_tail_same - eps) ++analytic_bad;
    }
    CheckResult r;
    r.name = "tail-alignment";
    r.pass = align_bad == 0 && analytic_bad == 0;
    r.detail = fmt("n=256 k=2, %llu per side, t=1..10: %d alignment violations (worst %+.4f), "
                   "%d analytic violations",
                   static_cast<unsigned long long>(c.trials), align_bad, worst, analytic_bad);
    return r;
}

CheckResult analytic_bound_shape(std::uint64_t, std::uint64_t) {
    int bad = 0;
    for (double n : {100.0, 1e4, 1e6}) {
        for (int k : {1, 2, 8}) {
            double prev = 1.0;
            for (int t = 1; t <= 30; ++t) {
                const double opt = tail_bound_optimized(n, k, t);
                if (!(opt >= 0 && opt <= 1)) ++bad;
                if (opt > prev + 1e-15) ++bad;  // nonincreasing in t
                prev = opt;
                for (double rr : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                    if (opt > tail_bound(n, k, t, rr) + 1e-12) ++bad;
                }
            }
        }
    }
    CheckResult r;
    r.name = "analytic-bound-shape";
    r.pass = bad == 0;
    r.detail = fmt("optimized bound vs fixed-exponent grid over 9 (n, k) pairs, t <= 30: "
                   "%d violations",
                   bad);
    return r;
}

// ---- constants -------------------------------------------------------------

CheckResult depth_gain_brackets(std::uint64_t, std::uint64_t) {
    int bad = 0;
    for (int k = 1; k <= 64; ++k) {
        const double hk = harmonic(k);
        const double e = expected_g1(k);
        if (!(hk / std::numbers::ln2 <= e + 1e-12 && e <= 1 + hk / std::numbers::ln2 + 1e-12)) {
            ++bad;
        }
        const double g = g_of_k(k);
        if (!(hk <= g + 1e-12 && g <= hk + std::numbers::ln2 + 1e-12)) ++bad;
    }
    CheckResult r;
    r.name = "depth-gain-brackets";
    r.pass = bad == 0;
    r.detail = fmt("k = 1..64 mean-gain and rate brackets: %d violations", bad);
    return r;
}

// ---- convergence -----------------------------------------------------------

CheckResult polar_band_large_n(std::uint64_t budget, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.model = Model::random_ids;
    cfg.n = std::uint64_t{1} << 17;
    cfg.d = 40;
    cfg.k = 8;
    cfg.trials = std::clamp<std::uint64_t>(budget / 333, 300, 3000);
    cfg.master_seed = seed;
    cfg.measurement = Measurement::t_polar;
    cfg.keep_per_trial = false;
    const double ratio = run_experiment(cfg).normalized_mean;
    const double c = 1.0 / g_of_k(8);
    CheckResult r;
    r.name = "polar-band-large-n";
    r.pass = ratio >= 0.9 * c && ratio <= 1.35 * c;
    r.detail = fmt("n=2^17 k=8, %llu trials: mean T/log n = %.4f, band [%.4f, %.4f]",
                   static_cast<unsigned long long>(cfg.trials), ratio, 0.9 * c, 1.35 * c);
    return r;
}

CheckResult first_passage_recursion_agreement(std::uint64_t budget, std::uint64_t seed) {
    const std::uint64_t n = std::uint64_t{1} << 16;
    const int k = 8;
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget, 10000, 1000000);
    double s1 = 0, s2 = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        RngStream rng = RngStream::derive(seed, stream_domain::trial, i);
        const double t = sample_t_n(n, k, rng);
        s1 += t;
        s2 += t * t;
    }
    const double mean = s1 / static_cast<double>(reps);
    const double se =
        std::sqrt((s2 / static_cast<double>(reps) - mean * mean) / static_cast<double>(reps));
    const double exact = expected_t_n_exact(n, k);
    const double z = std::fabs(mean - exact) / se;
    CheckResult r;
    r.name = "first-passage-recursion-agreement";
    r.pass = z <= 4.0;
    r.detail = fmt("n=2^16 k=8, %llu walks: mean %.4f vs exact %.4f, |z| = %.2f (tol 4)",
                   static_cast<unsigned long long>(reps), mean, exact, z);
    return r;
}

CheckResult cross_scale_gap_shrinks(std::uint64_t budget, std::uint64_t seed) {
    const int k = 8;
    struct Point {
        std::uint64_t n;
        std::uint64_t trials;
        double gap = 0;
    };
    Point points[] = {{std::uint64_t{1} << 12, std::clamp<std::uint64_t>(budget / 50, 500, 2000)},
                      {std::uint64_t{1} << 17, std::clamp<std::uint64_t>(budget / 125, 300, 800)}};
    for (auto& p : points) {
        ExperimentConfig cfg;
        cfg.model = Model::random_ids;
        cfg.n = p.n;
        cfg.d = 40;
        cfg.k = k;
        cfg.trials = p.trials;
        cfg.master_seed = seed;
        cfg.measurement = Measurement::t_polar;
        const ExperimentResult res = run_experiment(cfg);
        const double log_n = std::log(static_cast<double>(p.n));
        double acc = 0;
        for (std::uint64_t i = 0; i < p.trials; ++i) {
            RngStream rng = RngStream::derive(seed, stream_domain::walk_b, i);
            acc += std::fabs(res.per_trial[i] - sample_t_n(p.n, k, rng)) / log_n;
        }
        p.gap = acc / static_cast<double>(p.trials);
    }
    CheckResult r;
    r.name = "cross-scale-gap-shrinks";
    r.pass = points[1].gap < points[0].gap;
    r.detail = fmt("mean |T - T_n|/log n: %.4f at n=2^12 -> %.4f at n=2^17 (%s)", points[0].gap,
                   points[1].gap, points[1].gap < points[0].gap ? "decreasing" : "NOT decreasing");
    return r;
}

// ---- oracle ----------------------------------------------------------------

CheckResult catalog_exact_vs_sampled(std::uint64_t budget, std::uint64_t seed) {
    const auto catalog = oracle_catalog();
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget, 10000, 1000000);
    const double tol = 0.01 * std::sqrt(std::max(1.0, 1e6 / static_cast<double>(reps)));
    int bad = 0;
    double worst = 0;
    for (std::size_t j = 0; j < catalog.size(); j += 2) {
        const auto& e = catalog[j];
        const IdTrie trie(e.ids);
        const auto exact = brute_force_t_distribution(e.ids, e.k, e.x, e.y);
        std::map<int, double> hist;
        for (std::uint64_t i = 0; i < reps; ++i) {
            RngStream rng = RngStream::derive(seed, stream_domain::trial, j * 2000000 + i);
            hist[static_cast<int>(simulate_routing_process(trie, e.x, e.y, e.k, rng).T())] +=
                1.0 / static_cast<double>(reps);
        }
        const double tv = tv_distance(exact, hist);
        worst = std::max(worst, tv);
        if (tv >= tol) ++bad;
    }
    CheckResult r;
    r.name = "catalog-exact-vs-sampled";
    r.pass = bad == 0;
    r.detail = fmt("10 instances x %llu trials: worst TV %.4f (tol %.4f), %d over",
                   static_cast<unsigned long long>(reps), worst, tol, bad);
    return r;
}

CheckResult catalog_engine_agreement(std::uint64_t budget, std::uint64_t seed) {
    const auto catalog = oracle_catalog();
    const std::uint64_t reps = std::clamp<std::uint64_t>(budget / 5, 5000, 200000);
    const double tol = 0.02 * std::sqrt(std::max(1.0, 2e5 / static_cast<double>(reps)));
    int bad = 0;
    double worst = 0;
    for (std::size_t j = 0; j < catalog.size(); j += 3) {
        const auto& e = catalog[j];
        const IdTrie trie(e.ids);
        std::map<int, double> route_hist, sim_hist;
        for (std::uint64_t i = 0; i < reps; ++i) {
            RngStream build_rng = RngStream::derive(seed, stream_domain::pairs, j * 400000 + i);
            const Network net = Network::build(e.ids, e.k, build_rng);
            route_hist[static_cast<int>(net.route(e.x, e.y).T())] +=
                1.0 / static_cast<double>(reps);
            RngStream sim_rng = RngStream::derive(seed, stream_domain::targets, j * 400000 + i);
            sim_hist[static_cast<int>(simulate_routing_process(trie, e.x, e.y, e.k, sim_rng).T())] +=
                1.0 / static_cast<double>(reps);
        }
        const double tv = tv_distance(route_hist, sim_hist);
        worst = std::max(worst, tv);
        if (tv >= tol) ++bad;
    }
    CheckResult r;
    r.name = "catalog-engine-agreement";
    r.pass = bad == 0;
    r.detail = fmt("7 instances x %llu trials per engine: worst TV %.4f (tol %.4f), %d over",
                   static_cast<unsigned long long>(reps), worst, tol, bad);
    return r;
}

CheckResult enumeration_cap_control(std::uint64_t, std::uint64_t) {
    std::vector<NodeId> ids;
    for (std::uint64_t v = 0; v < 64; ++v) ids.push_back(NodeId::from_value(v, 10));
    bool threw = false;
    try {
        brute_force_t_distribution(ids, 8, ids[0], polar_opposite(ids[0]));
    } catch (const InfeasibleError&) {
        threw = true;
    }
    CheckResult r;
    r.name = "enumeration-cap-control";
    r.pass = threw;
    r.detail = threw ? "oversized instance rejected as infeasible"
                     : "oversized instance unexpectedly enumerated";
    return r;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "metric", "trie", "dominance", "tails", "constants", "convergence", "oracle"};
    return names;
}

SuiteReport run_verify_suite(const std::string& suite, std::uint64_t budget, std::uint64_t seed) {
    SuiteReport report;
    report.suite = suite;
    report.budget = budget;
    report.seed = seed;

    if (suite == "metric") {
        report.checks.push_back(metric_axioms(budget, seed));
        report.checks.push_back(prefix_distance_certificate(budget, seed));
        report.checks.push_back(distance_order_consistency(budget, seed));
    } else if (suite == "trie") {
        report.checks.push_back(improving_range_law(budget, seed));
        report.checks.push_back(closest_leaf_agreement(budget, seed));
        report.checks.push_back(rotation_involution(budget, seed));
    } else if (suite == "dominance") {
        report.checks.push_back(range_shrink_dominance_small(budget, seed));
        report.checks.push_back(dominance_negative_control(budget, seed));
        report.checks.push_back(dkw_width_sanity(budget, seed));
    } else if (suite == "tails") {
        report.checks.push_back(tail_alignment_small(budget, seed));
        report.checks.push_back(analytic_bound_shape(budget, seed));
    } else if (suite == "constants") {
        report.checks.push_back(constants_table_check());
        report.checks.push_back(closed_form_identities_check());
        report.checks.push_back(depth_gain_brackets(budget, seed));
    } else if (suite == "convergence") {
        report.checks.push_back(polar_band_large_n(budget, seed));
        report.checks.push_back(first_passage_recursion_agreement(budget, seed));
        report.checks.push_back(cross_scale_gap_shrinks(budget, seed));
    } else if (suite == "oracle") {
        report.checks.push_back(catalog_exact_vs_sampled(budget, seed));
        report.checks.push_back(catalog_engine_agreement(budget, seed));
        report.checks.push_back(enumeration_cap_control(budget, seed));
    } else {
        throw DomainError("unknown verify suite: " + suite + " (known: metric, trie, dominance, "
                          "tails, constants, convergence, oracle)");
    }
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CheckResult& c) { return c.pass; });
    return report;
}

}  // namespace kadlab
