#include "kadlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "kadlab/constants.hpp"
#include "kadlab/dominance.hpp"
#include "kadlab/errors.hpp"
#include "kadlab/id_text.hpp"
#include "kadlab/id_trie.hpp"
#include "kadlab/network.hpp"
#include "kadlab/samplers.hpp"

namespace kadlab {

std::string to_string(Model m) {
    switch (m) {
        case Model::deterministic_ids: return "deterministic_ids";
        case Model::random_ids: return "random_ids";
    }
    throw DomainError("unknown model value");
}

std::string to_string(IdSourceKind s) {
    switch (s) {
        case IdSourceKind::random_without_replacement: return "random_without_replacement";
        case IdSourceKind::sequential: return "sequential";
        case IdSourceKind::clustered: return "clustered";
        case IdSourceKind::file: return "file";
    }
    throw DomainError("unknown id source value");
}

std::string to_string(KRule r) {
    switch (r) {
        case KRule::fixed: return "fixed";
        case KRule::log_n: return "log_n";
        case KRule::n_pow: return "n_pow";
    }
    throw DomainError("unknown k rule value");
}

std::string to_string(Measurement m) {
    switch (m) {
        case Measurement::t_fixed_pair: return "t_fixed_pair";
        case Measurement::t_sup_y: return "t_sup_y";
        case Measurement::t_sup_xy: return "t_sup_xy";
        case Measurement::t_polar: return "t_polar";
        case Measurement::s_sizes: return "s_sizes";
        case Measurement::t_n: return "t_n";
    }
    throw DomainError("unknown measurement value");
}

Model parse_model(const std::string& s) {
    if (s == "deterministic_ids") return Model::deterministic_ids;
    if (s == "random_ids") return Model::random_ids;
    throw DomainError("unknown model: " + s);
}

IdSourceKind parse_id_source_kind(const std::string& s) {
    if (s == "random_without_replacement") return IdSourceKind::random_without_replacement;
    if (s == "sequential") return IdSourceKind::sequential;
    if (s == "clustered") return IdSourceKind::clustered;
    if (s == "file") return IdSourceKind::file;
    throw DomainError("unknown id source: " + s);
}

KRule parse_k_rule(const std::string& s) {
    if (s == "fixed") return KRule::fixed;
    if (s == "log_n") return KRule::log_n;
    if (s == "n_pow") return KRule::n_pow;
    throw DomainError("unknown k rule: " + s);
}

Measurement parse_measurement(const std::string& s) {
    if (s == "t_fixed_pair") return Measurement::t_fixed_pair;
    if (s == "t_sup_y") return Measurement::t_sup_y;
    if (s == "t_sup_xy") return Measurement::t_sup_xy;
    if (s == "t_polar") return Measurement::t_polar;
    if (s == "s_sizes") return Measurement::s_sizes;
    if (s == "t_n") return Measurement::t_n;
    throw DomainError("unknown measurement: " + s);
}

void validate(const ExperimentConfig& config) {
    std::vector<std::string> issues;
    if (config.n < 2) issues.push_back("n must be at least 2");
    if (config.d < 1 || config.d > 256) {
        issues.push_back("d must be in [1, 256]");
    } else if (config.n >= 2 && config.d < ceil_log2(config.n)) {
        issues.push_back("d must be at least ceil(log2 n) = " +
                         std::to_string(ceil_log2(config.n)) + " so n ids fit");
    }
    if (config.trials < 1) issues.push_back("trials must be at least 1");
    switch (config.k_rule) {
        case KRule::fixed:
            if (config.k < 1) issues.push_back("k must be at least 1");
            break;
        case KRule::n_pow:
            if (!(config.theta > 0 && config.theta < 1)) {
                issues.push_back("theta must lie in (0, 1)");
            }
            break;
        case KRule::log_n:
            break;
    }
    const IdSourceSpec& src = config.id_source;
    if (src.kind == IdSourceKind::clustered) {
        if (src.cluster_prefix.empty()) {
            issues.push_back("clustered source needs a nonempty cluster_prefix");
        } else {
            bool ok = true;
            for (char c : src.cluster_prefix) ok = ok && (c == '0' || c == '1');
            if (!ok) issues.push_back("cluster_prefix must consist of 0/1 characters");
            if (config.d >= 1 && static_cast<int>(src.cluster_prefix.size()) > config.d) {
                issues.push_back("cluster_prefix is longer than d");
            }
        }
        if (!(src.cluster_fraction >= 0 && src.cluster_fraction <= 1)) {
            issues.push_back("cluster_fraction must lie in [0, 1]");
        }
    }
    if (src.kind == IdSourceKind::file && src.path.empty()) {
        issues.push_back("file source needs a path");
    }
    if (config.model == Model::random_ids &&
        src.kind != IdSourceKind::random_without_replacement) {
        issues.push_back(
            "the random-ids model redraws ids uniformly each trial; "
            "use the deterministic-ids model with this id source");
    }
    if (config.workers < 1) issues.push_back("workers must be at least 1");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

int resolve_k(const ExperimentConfig& config) {
    switch (config.k_rule) {
        case KRule::fixed:
            return config.k;
        case KRule::log_n:
            return static_cast<int>(
                std::max<long long>(1, std::llround(std::log(static_cast<double>(config.n)))));
        case KRule::n_pow: {
            double v = std::pow(static_cast<double>(config.n), config.theta);
            double r = std::round(v);
            // pow can land a hair above an exact power; don't let ceil bump it
            return static_cast<int>(std::fabs(v - r) < 1e-9 ? r : std::ceil(v));
        }
    }
    throw DomainError("unknown k rule value");
}

namespace {

// count distinct uniform draws from [0, 2^bits), in generation order
std::vector<std::uint64_t> distinct_values(int bits, std::uint64_t count, RngStream& rng) {
    if (bits < 1 || bits > 64) throw DomainError("distinct_values needs bits in [1, 64]");
    const bool full = bits == 64;
    const std::uint64_t space = full ? 0 : (std::uint64_t{1} << bits);
    if (!full && count > space) {
        throw CapacityError("cannot draw " + std::to_string(count) + " distinct values from a " +
                            std::to_string(bits) + "-bit space");
    }
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (bits <= 22) {
        // small space: partial Fisher-Yates over the whole range
        std::vector<std::uint64_t> pool(space);
        std::iota(pool.begin(), pool.end(), std::uint64_t{0});
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t j = i + rng.below(space - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }
    if (!full && count > space / 2) {
        throw CapacityError("rejection sampling needs at most half the id space occupied");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(count * 2);
    while (out.size() < count) {
        std::uint64_t v = full ? rng.next_u64() : rng.below(space);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

NodeId uniform_wide_id(int d, RngStream& rng) {
    std::vector<int> bits(d);
    for (int i = 0; i < d; i += 64) {
        std::uint64_t w = rng.next_u64();
        for (int j = 0; j < 64 && i + j < d; ++j) bits[i + j] = static_cast<int>((w >> j) & 1);
    }
    return NodeId::from_bits(bits);
}

NodeId uniform_id(int d, RngStream& rng) {
    if (d < 64) return NodeId::from_value(rng.below(std::uint64_t{1} << d), d);
    if (d == 64) return NodeId::from_value(rng.next_u64(), d);
    return uniform_wide_id(d, rng);
}

// prefix bits followed by the low `suffix_bits` bits of sv, msb first
NodeId prefixed_id(const std::string& prefix, int suffix_bits, std::uint64_t sv, int d) {
    std::vector<int> bits(d);
    const int p = static_cast<int>(prefix.size());
    for (int i = 0; i < p; ++i) bits[i] = prefix[i] - '0';
    for (int j = 0; j < suffix_bits; ++j) {
        bits[p + j] = static_cast<int>((sv >> (suffix_bits - 1 - j)) & 1);
    }
    return NodeId::from_bits(bits);
}

std::vector<NodeId> random_member_ids(std::uint64_t n, int d, RngStream& rng) {
    std::vector<NodeId> out;
    out.reserve(n);
    if (d <= 64) {
        for (std::uint64_t v : distinct_values(d, n, rng)) out.push_back(NodeId::from_value(v, d));
        return out;
    }
    std::unordered_set<NodeId, NodeIdHash> seen;
    seen.reserve(n * 2);
    while (out.size() < n) {
        NodeId id = uniform_wide_id(d, rng);
        if (seen.insert(id).second) out.push_back(id);
    }
    return out;
}

std::vector<NodeId> clustered_ids(const IdSourceSpec& src, std::uint64_t n, int d,
                                  RngStream& rng) {
    const int p = static_cast<int>(src.cluster_prefix.size());
    const int suffix_bits = d - p;
    std::uint64_t m = static_cast<std::uint64_t>(std::llround(src.cluster_fraction * n));
    m = std::min(m, n);

    std::vector<NodeId> out;
    out.reserve(n);
    std::unordered_set<NodeId, NodeIdHash> taken;
    taken.reserve(n * 2);
    auto push = [&](const NodeId& id) {
        taken.insert(id);
        out.push_back(id);
    };

    if (suffix_bits == 0) {
        if (m > 1) throw CapacityError("cluster_prefix of length d holds a single id");
        if (m == 1) push(prefixed_id(src.cluster_prefix, 0, 0, d));
    } else if (suffix_bits <= 64) {
        for (std::uint64_t sv : distinct_values(suffix_bits, m, rng)) {
            push(prefixed_id(src.cluster_prefix, suffix_bits, sv, d));
        }
    } else {
        while (out.size() < m) {
            NodeId suffix = uniform_wide_id(suffix_bits, rng);
            std::vector<int> bits(d);
            for (int i = 0; i < p; ++i) bits[i] = src.cluster_prefix[i] - '0';
            for (int j = 0; j < suffix_bits; ++j) bits[p + j] = suffix.bit(j + 1);
            NodeId id = NodeId::from_bits(bits);
            if (!taken.contains(id)) push(id);
        }
    }

    // remainder: uniform over the whole space, avoiding everything chosen so far
    if (d <= 22) {
        const std::uint64_t space = std::uint64_t{1} << d;
        std::vector<std::uint64_t> pool;
        pool.reserve(space - out.size());
        for (std::uint64_t v = 0; v < space; ++v) {
            if (!taken.contains(NodeId::from_value(v, d))) pool.push_back(v);
        }
        if (n - out.size() > pool.size()) {
            throw CapacityError("clustered source cannot fit n distinct ids");
        }
        for (std::uint64_t i = 0; out.size() < n; ++i) {
            std::uint64_t j = i + rng.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            push(NodeId::from_value(pool[i], d));
        }
        return out;
    }
    if (d <= 63 && n > (std::uint64_t{1} << (d - 1))) {
        throw CapacityError("rejection sampling needs at most half the id space occupied");
    }
    while (out.size() < n) {
        NodeId id = uniform_id(d, rng);
        if (!taken.contains(id)) push(id);
    }
    return out;
}

}  // namespace

std::vector<NodeId> generate_ids(const IdSourceSpec& source, std::uint64_t n, int d,
                                 RngStream& rng) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (d < 1 || d > 256) throw DomainError("d must be in [1, 256]");
    if (d < 64 && n > (std::uint64_t{1} << d)) {
        throw CapacityError("a " + std::to_string(d) + "-bit space cannot hold " +
                            std::to_string(n) + " distinct ids");
    }
    switch (source.kind) {
        case IdSourceKind::random_without_replacement:
            return random_member_ids(n, d, rng);
        case IdSourceKind::sequential: {
            std::vector<NodeId> out;
            out.reserve(n);
            for (std::uint64_t v = 0; v < n; ++v) out.push_back(NodeId::from_value(v, d));
            return out;
        }
        case IdSourceKind::clustered:
            return clustered_ids(source, n, d, rng);
        case IdSourceKind::file: {
            std::vector<NodeId> ids = parse_ids_file(source.path, d);
            if (ids.size() != n) {
                throw ConfigError({"id file holds " + std::to_string(ids.size()) +
                                   " ids but the config expects n = " + std::to_string(n)});
            }
            std::unordered_set<NodeId, NodeIdHash> seen(ids.begin(), ids.end());
            if (seen.size() != ids.size()) {
                throw DuplicateIdError("id file contains duplicate ids");
            }
            return ids;
        }
    }
    throw DomainError("unknown id source value");
}

SummaryStats summarize(std::vector<double> values) {
    if (values.empty()) throw DomainError("summarize needs at least one value");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    SummaryStats s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    if (n > 1) {
        double acc = 0;
        for (double v : values) acc += (v - s.mean) * (v - s.mean);
        s.variance = acc / static_cast<double>(n - 1);
    }
    auto pct = [&](double q) {
        auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        rank = std::clamp<std::size_t>(rank, 1, n);
        return values[rank - 1];
    };
    s.p50 = pct(0.50);
    s.p90 = pct(0.90);
    s.p99 = pct(0.99);
    s.max = values.back();
    return s;
}

namespace {

constexpr std::uint64_t kSupTargetDraws = 1024;  // non-member probes per trial
constexpr std::uint64_t kSupPairDraws = 1024;    // (x, y) probes per trial

struct TrialContext {
    const ExperimentConfig* config;
    int k;
    const std::vector<NodeId>* shared_ids;  // deterministic model only
    const IdTrie* shared_trie;
};

double sup_over_all_targets(const Network& net, const NodeId& x) {
    const int d = net.d();
    std::size_t sup = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
        sup = std::max(sup, net.route(x, NodeId::from_value(v, d)).T());
    }
    return static_cast<double>(sup);
}

void run_one_trial(const TrialContext& ctx, std::uint64_t i, std::vector<double>& values,
                   std::vector<double>& sup_members, std::vector<double>& sup_nonmembers) {
    const ExperimentConfig& config = *ctx.config;
    RngStream trial_rng = RngStream::derive(config.master_seed, stream_domain::trial, i);

    if (config.measurement == Measurement::t_n) {
        values[i] = static_cast<double>(sample_t_n(config.n, ctx.k, trial_rng));
        return;
    }

    const std::vector<NodeId>* ids = ctx.shared_ids;
    std::vector<NodeId> own_ids;
    std::optional<IdTrie> own_trie;
    const IdTrie* trie = ctx.shared_trie;
    if (config.model == Model::random_ids) {
        RngStream id_rng = RngStream::derive(config.master_seed, stream_domain::ids_per_trial, i);
        own_ids = generate_ids(config.id_source, config.n, config.d, id_rng);
        ids = &own_ids;
        own_trie.emplace(own_ids);
        trie = &*own_trie;
    }

    switch (config.measurement) {
        case Measurement::t_fixed_pair:
        case Measurement::t_polar:
        case Measurement::s_sizes: {
            NodeId x, y;
            if (config.measurement == Measurement::t_fixed_pair) {
                x = (*ids)[0];
                y = (*ids)[1];
            } else if (config.measurement == Measurement::t_polar) {
                x = (*ids)[0];
                y = x.complement();
            } else {
                x = trie->leaf(0);
                y = NodeId::from_value(0, config.d).complement();
            }
            RoutingTrace trace = simulate_routing_process(*trie, x, y, ctx.k, trial_rng);
            if (config.measurement == Measurement::s_sizes) {
                values[i] = trace.T() >= 1 ? static_cast<double>(trace.subtree_sizes[1]) : 0.0;
            } else {
                values[i] = static_cast<double>(trace.T());
            }
            return;
        }
        case Measurement::t_sup_y: {
            Network net = Network::build(*ids, ctx.k, trial_rng);
            const NodeId& x = (*ids)[0];
            if (config.d <= 12) {
                values[i] = sup_over_all_targets(net, x);
                return;
            }
            std::size_t sup_m = 0;
            for (const NodeId& y : *ids) sup_m = std::max(sup_m, net.route(x, y).T());
            RngStream target_rng =
                RngStream::derive(config.master_seed, stream_domain::targets, i);
            std::size_t sup_n = 0;
            const bool full_space = config.d < 64 && config.n == (std::uint64_t{1} << config.d);
            for (std::uint64_t j = 0; !full_space && j < kSupTargetDraws;) {
                NodeId y = uniform_id(config.d, target_rng);
                if (net.trie().contains(y)) continue;
                sup_n = std::max(sup_n, net.route(x, y).T());
                ++j;
            }
            sup_members[i] = static_cast<double>(sup_m);
            sup_nonmembers[i] = static_cast<double>(sup_n);
            values[i] = static_cast<double>(std::max(sup_m, sup_n));
            return;
        }
        case Measurement::t_sup_xy: {
            Network net = Network::build(*ids, ctx.k, trial_rng);
            RngStream pair_rng = RngStream::derive(config.master_seed, stream_domain::pairs, i);
            std::size_t sup = 0;
            for (std::uint64_t j = 0; j < kSupPairDraws; ++j) {
                const NodeId& x = (*ids)[pair_rng.below(config.n)];
                NodeId y = j % 2 == 0 ? (*ids)[pair_rng.below(config.n)]
                                      : uniform_id(config.d, pair_rng);
                sup = std::max(sup, net.route(x, y).T());
            }
            values[i] = static_cast<double>(sup);
            return;
        }
        default:
            throw DomainError("unknown measurement value");
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);

    ExperimentResult res;
    res.config = config;
    res.resolved_k = resolve_k(config);

    const bool needs_ids = config.measurement != Measurement::t_n;
    std::vector<NodeId> shared_ids;
    std::optional<IdTrie> shared_trie;
    if (needs_ids && config.model == Model::deterministic_ids) {
        RngStream id_rng = RngStream::derive(config.master_seed, stream_domain::ids_once, 0);
        shared_ids = generate_ids(config.id_source, config.n, config.d, id_rng);
        shared_trie.emplace(shared_ids);
    }
    const std::uint64_t trials = config.trials;
    const bool separate_sups = config.measurement == Measurement::t_sup_y && config.d > 12;
    std::vector<double> values(trials, 0.0);
    std::vector<double> sup_members, sup_nonmembers;
    if (separate_sups) {
        sup_members.assign(trials, 0.0);
        sup_nonmembers.assign(trials, 0.0);
    }

    TrialContext ctx{&config, res.resolved_k, &shared_ids,
                     shared_trie ? &*shared_trie : nullptr};

    const std::uint64_t worker_count =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(config.workers), trials);
    if (worker_count <= 1) {
        for (std::uint64_t i = 0; i < trials; ++i) {
            run_one_trial(ctx, i, values, sup_members, sup_nonmembers);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= trials) return;
                try {
                    run_one_trial(ctx, i, values, sup_members, sup_nonmembers);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(trials, std::memory_order_relaxed);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::uint64_t w = 0; w < worker_count; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    res.summary = summarize(values);
    res.normalized_mean = res.summary.mean / std::log(static_cast<double>(config.n));
    switch (config.measurement) {
        case Measurement::t_fixed_pair:
            res.reference_name = "c_k";
            res.reference_value = constant(res.resolved_k, 0);
            break;
        case Measurement::t_polar:
        case Measurement::t_n:
            res.reference_name = "1/g(k)";
            res.reference_value = 1.0 / g_of_k(res.resolved_k);
            break;
        case Measurement::t_sup_y:
            res.reference_name = "c_k'";
            res.reference_value = constant(res.resolved_k, 1);
            break;
        case Measurement::t_sup_xy:
            res.reference_name = "c_k*";
            res.reference_value = constant(res.resolved_k, 2);
            break;
        case Measurement::s_sizes:
            res.reference_name = "";
            res.reference_value = std::numeric_limits<double>::quiet_NaN();
            break;
    }
    res.sup_members = std::move(sup_members);
    res.sup_nonmembers = std::move(sup_nonmembers);
    if (config.keep_per_trial) {
        res.per_trial = std::move(values);
    }
    return res;
}

TailComparisonTable tail_comparison(const ExperimentConfig& config,
                                    const std::vector<int>& t_values) {
    if (config.measurement == Measurement::s_sizes || config.measurement == Measurement::t_n) {
        throw DomainError("tail comparison needs a hop-count measurement");
    }
    ExperimentConfig c = config;
    c.keep_per_trial = true;
    ExperimentResult result = run_experiment(c);

    const std::uint64_t n_samples = c.trials;
    const int k = result.resolved_k;
    const double log_n = std::log(static_cast<double>(c.n));

    // companion walk: tau = number of steps the scaled product stays at least 1
    std::vector<double> taus(n_samples);
    for (std::uint64_t j = 0; j < n_samples; ++j) {
        RngStream rng = RngStream::derive(c.master_seed, stream_domain::walk_b, j);
        double logw = log_n;
        int t = 0;
        for (;;) {
            logw += std::log(sample_beta_min(k, rng));
            if (logw >= 0) {
                ++t;
            } else {
                break;
            }
        }
        taus[j] = t;
    }

    std::vector<double> ts = result.per_trial;
    std::sort(ts.begin(), ts.end());
    std::sort(taus.begin(), taus.end());
    auto tail = [n_samples](const std::vector<double>& sorted, double r) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), r);
        return static_cast<double>(sorted.end() - it) / static_cast<double>(n_samples);
    };

    TailComparisonTable table;
    table.samples_per_side = n_samples;
    table.slack = 2 * dkw_epsilon(n_samples, 0.99);
    for (int t : t_values) {
        TailRow row;
        row.t = t;
        row.t_tail = t <= 0 ? 1.0 : tail(ts, t);
        row.w_tail_same = t <= 0 ? 1.0 : tail(taus, t);
        row.w_tail_prev = t <= 1 ? 1.0 : tail(taus, t - 1);
        row.analytic =
            t <= 0 ? 1.0 : tail_bound_optimized(static_cast<double>(c.n), k, t);
        table.rows.push_back(row);
    }
    return table;
}

namespace {

nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string id_source_label(const IdSourceSpec& src) {
    switch (src.kind) {
        case IdSourceKind::clustered:
            return "clustered:" + src.cluster_prefix + ":" +
                   format_double(src.cluster_fraction);
        case IdSourceKind::file:
            return "file:" + src.path;
        default:
            return to_string(src.kind);
    }
}

}  // namespace

std::string to_json_string(const ExperimentResult& result, bool include_per_trial) {
    using json = nlohmann::ordered_json;
    const ExperimentConfig& c = result.config;

    json cfg;
    cfg["measurement"] = to_string(c.measurement);
    cfg["model"] = to_string(c.model);
    json src;
    src["kind"] = to_string(c.id_source.kind);
    if (c.id_source.kind == IdSourceKind::clustered) {
        src["cluster_prefix"] = c.id_source.cluster_prefix;
        src["cluster_fraction"] = c.id_source.cluster_fraction;
    }
    if (c.id_source.kind == IdSourceKind::file) src["path"] = c.id_source.path;
    cfg["id_source"] = src;
    cfg["n"] = c.n;
    cfg["d"] = c.d;
    cfg["k_rule"] = to_string(c.k_rule);
    if (c.k_rule == KRule::fixed) cfg["k"] = c.k;
    if (c.k_rule == KRule::n_pow) cfg["theta"] = c.theta;
    cfg["resolved_k"] = result.resolved_k;
    cfg["trials"] = c.trials;
    cfg["master_seed"] = c.master_seed;

    json j;
    j["format"] = "kadlab-result-v1";
    j["artifact"] = "kadlab 0.1.0";
    j["config"] = cfg;
    json summary;
    summary["mean"] = json_number(result.summary.mean);
    summary["variance"] = json_number(result.summary.variance);
    summary["p50"] = json_number(result.summary.p50);
    summary["p90"] = json_number(result.summary.p90);
    summary["p99"] = json_number(result.summary.p99);
    summary["max"] = json_number(result.summary.max);
    j["summary"] = summary;
    j["normalized_mean"] = json_number(result.normalized_mean);
    json ref;
    ref["name"] = result.reference_name;
    ref["value"] = json_number(result.reference_value);
    j["reference"] = ref;
    if (include_per_trial) j["per_trial"] = result.per_trial;
    if (!result.sup_members.empty()) {
        j["sup_members"] = result.sup_members;
        j["sup_nonmembers"] = result.sup_nonmembers;
    }
    return j.dump(2) + "\n";
}

std::string csv_header() {
    return "measurement,model,id_source,n,d,k,trials,master_seed,mean,variance,"
           "p50,p90,p99,max,normalized_mean,reference_name,reference_value";
}

std::string to_csv_row(const ExperimentResult& result) {
    const ExperimentConfig& c = result.config;
    std::string row;
    row += to_string(c.measurement);
    row += ',';
    row += to_string(c.model);
    row += ',';
    row += id_source_label(c.id_source);
    row += ',';
    row += std::to_string(c.n);
    row += ',';
    row += std::to_string(c.d);
    row += ',';
    row += std::to_string(result.resolved_k);
    row += ',';
    row += std::to_string(c.trials);
    row += ',';
    row += std::to_string(c.master_seed);
    row += ',';
    row += format_double(result.summary.mean);
    row += ',';
    row += format_double(result.summary.variance);
    row += ',';
    row += format_double(result.summary.p50);
    row += ',';
    row += format_double(result.summary.p90);
    row += ',';
    row += format_double(result.summary.p99);
    row += ',';
    row += format_double(result.summary.max);
    row += ',';
    row += format_double(result.normalized_mean);
    row += ',';
    row += result.reference_name;
    row += ',';
    row += format_double(result.reference_value);
    return row;
}

}  // namespace kadlab
