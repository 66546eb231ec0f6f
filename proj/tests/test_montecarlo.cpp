#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "kadlab/brute_force.hpp"
#include "kadlab/constants.hpp"
#include "kadlab/dominance.hpp"
#include "kadlab/errors.hpp"
#include "kadlab/experiment.hpp"
#include "kadlab/id_text.hpp"
#include "kadlab/id_trie.hpp"
#include "kadlab/network.hpp"
#include "kadlab/rng.hpp"
#include "kadlab/samplers.hpp"

using namespace kadlab;

namespace {

std::vector<NodeId> ids_from_values(const std::vector<std::uint64_t>& values, int d) {
    std::vector<NodeId> out;
    for (auto v : values) out.push_back(NodeId::from_value(v, d));
    return out;
}

double total_variation(const std::map<int, double>& p, const std::map<int, double>& q) {
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

}  // namespace

TEST_CASE("beta-min sampler matches its closed-form moments") {
    RngStream rng(20260815);
    const int k = 2;
    const std::size_t reps = 200000;
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        double b = sample_beta_min(k, rng);
        REQUIRE(b > 0);
        REQUIRE(b < 1);
        s1 += b;
        s2 += b * b;
    }
    const double mean = s1 / reps;
    const double m2 = s2 / reps;
    const double se1 = std::sqrt((m2 - mean * mean) / reps);
    CHECK(std::fabs(mean - beta_product_moment(k, 1, 1)) < 4 * se1);
    CHECK(beta_product_moment(k, 1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    // a crude fourth-moment bound is plenty for the second moment's band
    CHECK(std::fabs(m2 - beta_product_moment(k, 2, 1)) < 4 * std::sqrt(m2 / reps));
    CHECK_THROWS_AS(sample_beta_min(0, rng), DomainError);
}

TEST_CASE("product walk stays multiplicative in log space") {
    RngStream rng(31);
    CHECK(sample_w(1000.0, 3, 0, rng) == 1000.0);
    CHECK_THROWS_AS(sample_w(10.0, 3, -1, rng), DomainError);

    // E[log W] = log s0 - t * H_k for a walk of t independent shrink factors
    const int k = 3, t = 5;
    const double s0 = 1000.0;
    const std::size_t reps = 100000;
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        double w = sample_w(s0, k, t, rng);
        REQUIRE(w > 0);
        REQUIRE(w <= s0);
        double lw = std::log(w);
        s1 += lw;
        s2 += lw * lw;
    }
    const double mean = s1 / reps;
    const double se = std::sqrt((s2 / reps - mean * mean) / reps);
    CHECK(std::fabs(mean - (std::log(s0) - t * harmonic(k))) < 4 * se);
}

TEST_CASE("one-hop depth gain sampler follows its cdf") {
    RngStream rng(47);
    const int k = 8;
    const std::size_t reps = 200000;
    std::map<int, std::size_t> counts;
    double sum = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        int g = sample_g1(k, rng);
        REQUIRE(g >= 1);
        ++counts[g];
        sum += g;
    }
    double cum = 0;
    for (int i = 1; i <= 12; ++i) {
        cum += counts.count(i) ? static_cast<double>(counts[i]) : 0.0;
        CHECK(std::fabs(cum / reps - g1_cdf(k, i)) < 0.005);
    }
    CHECK(std::fabs(sum / reps - expected_g1(k)) < 0.02);

    RngStream rng1(48);
    double sum1 = 0;
    for (std::size_t i = 0; i < 100000; ++i) sum1 += sample_g1(1, rng1);
    CHECK(std::fabs(sum1 / 100000 - 2.0) < 0.02);
}

TEST_CASE("integer threshold walk replays as a plain gain sum") {
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(1024) == 10);
    CHECK(ceil_log2(1025) == 11);
    CHECK(ceil_log2(std::uint64_t{1} << 40) == 40);
    CHECK_THROWS_AS(ceil_log2(1), DomainError);

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        RngStream a = RngStream::derive(5, 11, seed);
        RngStream b = RngStream::derive(5, 11, seed);
        int t = sample_t_n(1000, 3, a);
        int sum = 0, steps = 0;
        while (sum < ceil_log2(1000)) {
            sum += sample_g1(3, b);
            ++steps;
        }
        CHECK(t == steps);
        CHECK(t >= 1);
    }

    RngStream rng(7);
    for (int i = 0; i < 50; ++i) CHECK(sample_t_n(2, 4, rng) == 1);
}

TEST_CASE("dkw half-width and the tail dominance report") {
    CHECK(dkw_epsilon(100000, 0.99) ==
          doctest::Approx(0.005146997846583986).epsilon(1e-12));
    CHECK(dkw_epsilon(400000, 0.99) ==
          doctest::Approx(0.005146997846583986 / 2).epsilon(1e-12));
    CHECK(dkw_epsilon(100, 0.5) > dkw_epsilon(100, 0.01));

    std::vector<double> zeros(100, 0.0), ones(100, 1.0);
    auto rep = dominance_test(zeros, ones, 0.99);
    CHECK(rep.pass);
    CHECK(rep.max_gap <= 0.0);
    CHECK(rep.slack == doctest::Approx(rep.eps_a + rep.eps_b));
    CHECK(std::is_sorted(rep.thresholds.begin(), rep.thresholds.end()));
    CHECK(std::adjacent_find(rep.thresholds.begin(), rep.thresholds.end()) ==
          rep.thresholds.end());

    auto flipped = dominance_test(ones, zeros, 0.99);
    CHECK_FALSE(flipped.pass);
    CHECK(flipped.max_gap == doctest::Approx(1.0));

    RngStream rng(404);
    std::vector<double> a, b;
    for (int i = 0; i < 2000; ++i) {
        double u = rng.uniform01();
        a.push_back(u);
        b.push_back(u + 0.25);
    }
    CHECK(dominance_test(a, b, 0.99).pass);
    CHECK_FALSE(dominance_test(b, a, 0.99).pass);

    auto same = dominance_test(a, a, 0.99);
    CHECK(same.pass);
    CHECK(same.max_gap == doctest::Approx(0.0));
}

TEST_CASE("exhaustive hop law on tiny instances") {
    auto pair_ids = ids_from_values({0, 1}, 1);
    auto pmf = brute_force_t_distribution(pair_ids, 1, pair_ids[0], pair_ids[1]);
    REQUIRE(pmf.size() == 1);
    CHECK(pmf.at(1) == doctest::Approx(1.0));

    // every bucket holds its whole class, so any lookup lands in one hop
    std::vector<std::uint64_t> all;
    for (std::uint64_t v = 0; v < 8; ++v) all.push_back(v);
    auto full = ids_from_values(all, 3);
    auto one_hop = brute_force_t_distribution(full, 8, full[0], full[7]);
    REQUIRE(one_hop.size() == 1);
    CHECK(one_hop.at(1) == doctest::Approx(1.0));

    auto self = brute_force_t_distribution(full, 8, full[7], full[7]);
    REQUIRE(self.size() == 1);
    CHECK(self.at(0) == doctest::Approx(1.0));
}

TEST_CASE("enumerated hop law matches simulated frequencies") {
    auto ids = ids_from_values({1, 2, 7, 8, 11, 14}, 4);
    IdTrie trie(ids);
    const NodeId x = ids[0];
    const NodeId y = NodeId::from_value(15, 4);

    for (int k : {1, 2}) {
        auto exact = brute_force_t_distribution(ids, k, x, y);
        double mass = 0;
        for (const auto& [t, p] : exact) {
            CHECK(t >= 0);
            CHECK(t <= 4);
            CHECK(p >= 0);
            mass += p;
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

        const std::size_t reps = 200000;
        std::map<int, double> freq;
        for (std::size_t j = 0; j < reps; ++j) {
            RngStream rng = RngStream::derive(303 + k, 1, j);
            freq[static_cast<int>(simulate_routing_process(trie, x, y, k, rng).T())] +=
                1.0 / reps;
        }
        CHECK(total_variation(exact, freq) < 0.01);
    }
}

TEST_CASE("enumeration refuses oversized subset products") {
    std::vector<std::uint64_t> vals;
    for (std::uint64_t v = 0; v < 64; ++v) vals.push_back(v);
    auto ids = ids_from_values(vals, 10);
    const NodeId y = NodeId::from_value(0, 10).complement();
    CHECK_THROWS_AS(brute_force_t_distribution(ids, 8, ids[0], y), InfeasibleError);
}

TEST_CASE("id generation covers each source") {
    RngStream rng(909);
    IdSourceSpec seq{IdSourceKind::sequential, "", 0, ""};
    auto s = generate_ids(seq, 5, 3, rng);
    REQUIRE(s.size() == 5);
    for (std::uint64_t v = 0; v < 5; ++v) CHECK(s[v].to_u64() == v);
    CHECK_THROWS_AS(generate_ids(seq, 20, 4, rng), CapacityError);

    IdSourceSpec uni{IdSourceKind::random_without_replacement, "", 0, ""};
    auto full = generate_ids(uni, 16, 4, rng);
    std::set<std::uint64_t> seen;
    for (const auto& id : full) seen.insert(id.to_u64());
    CHECK(seen.size() == 16);  // the whole 4-bit space, in some order

    auto dense = generate_ids(uni, 300, 9, rng);
    std::set<std::uint64_t> dvals;
    for (const auto& id : dense) {
        CHECK(id.d() == 9);
        dvals.insert(id.to_u64());
    }
    CHECK(dvals.size() == 300);

    auto sparse = generate_ids(uni, 1000, 30, rng);
    std::set<std::uint64_t> svals;
    for (const auto& id : sparse) svals.insert(id.to_u64());
    CHECK(svals.size() == 1000);

    auto wide = generate_ids(uni, 200, 128, rng);
    std::set<std::string> wvals;
    for (const auto& id : wide) {
        CHECK(id.d() == 128);
        wvals.insert(id.to_bin());
    }
    CHECK(wvals.size() == 200);
}

TEST_CASE("clustered generation fills the prefix quota first") {
    RngStream rng(910);
    IdSourceSpec spec{IdSourceKind::clustered, "1010", 0.5, ""};
    auto ids = generate_ids(spec, 40, 10, rng);
    REQUIRE(ids.size() == 40);
    std::set<std::string> uniq;
    std::size_t in_cluster = 0;
    for (const auto& id : ids) {
        uniq.insert(id.to_bin());
        if (id.to_bin().substr(0, 4) == "1010") ++in_cluster;
    }
    CHECK(uniq.size() == 40);
    CHECK(in_cluster >= 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(ids[i].to_bin().substr(0, 4) == "1010");

    IdSourceSpec overfull{IdSourceKind::clustered, "11", 1.0, ""};
    CHECK_THROWS_AS(generate_ids(overfull, 8, 4, rng), CapacityError);
}

TEST_CASE("file-backed ids round-trip through the text format") {
    RngStream rng(911);
    IdSourceSpec uni{IdSourceKind::random_without_replacement, "", 0, ""};
    auto written = generate_ids(uni, 6, 16, rng);
    const std::string path = "/tmp/kadlab_ids_test.txt";
    {
        std::ofstream out(path);
        out << format_ids(written);
    }
    IdSourceSpec spec{IdSourceKind::file, "", 0, path};
    auto read = generate_ids(spec, 6, 16, rng);
    REQUIRE(read.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(read[i] == written[i]);

    CHECK_THROWS_AS(generate_ids(spec, 7, 16, rng), ConfigError);

    const std::string dup_path = "/tmp/kadlab_ids_dup.txt";
    {
        std::ofstream out(dup_path);
        out << "0001\n0001\n";
    }
    IdSourceSpec dup{IdSourceKind::file, "", 0, dup_path};
    CHECK_THROWS_AS(generate_ids(dup, 2, 4, rng), DuplicateIdError);
}

TEST_CASE("config validation collects every issue at once") {
    ExperimentConfig bad;
    bad.n = 1;
    bad.d = 0;
    bad.trials = 0;
    bad.k_rule = KRule::fixed;
    bad.k = 0;
    bad.workers = 0;
    try {
        validate(bad);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.issues.size() >= 5);
    }

    ExperimentConfig good;
    good.n = 64;
    good.d = 8;
    good.k = 2;
    good.trials = 10;
    CHECK_NOTHROW(validate(good));

    ExperimentConfig tight = good;
    tight.d = 5;  // 64 ids need 6 bits
    CHECK_THROWS_AS(validate(tight), ConfigError);

    ExperimentConfig mismatch = good;
    mismatch.model = Model::random_ids;
    mismatch.id_source.kind = IdSourceKind::sequential;
    CHECK_THROWS_AS(validate(mismatch), ConfigError);

    ExperimentConfig cluster = good;
    cluster.model = Model::deterministic_ids;
    cluster.id_source.kind = IdSourceKind::clustered;
    cluster.id_source.cluster_prefix = "10x";
    cluster.id_source.cluster_fraction = 1.5;
    try {
        validate(cluster);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.issues.size() >= 2);
    }

    ExperimentConfig theta = good;
    theta.k_rule = KRule::n_pow;
    theta.theta = 1.0;
    CHECK_THROWS_AS(validate(theta), ConfigError);
}

TEST_CASE("bucket width rules resolve as documented") {
    ExperimentConfig c;
    c.n = 1024;
    c.d = 12;
    c.k_rule = KRule::fixed;
    c.k = 8;
    CHECK(resolve_k(c) == 8);

    c.k_rule = KRule::log_n;
    CHECK(resolve_k(c) == 7);  // ln 1024 = 6.93
    c.n = 2;
    CHECK(resolve_k(c) == 1);

    c.k_rule = KRule::n_pow;
    c.n = 4096;
    c.theta = 0.5;
    CHECK(resolve_k(c) == 64);
    c.n = 1000;
    c.theta = 0.3;
    CHECK(resolve_k(c) == 8);  // 1000^0.3 = 7.94
}

TEST_CASE("experiment runs are reproducible and worker-count independent") {
    ExperimentConfig c;
    c.model = Model::random_ids;
    c.n = 256;
    c.d = 16;
    c.k = 4;
    c.trials = 50;
    c.master_seed = 424242;
    c.measurement = Measurement::t_polar;

    c.workers = 1;
    auto r1 = run_experiment(c);
    c.workers = 4;
    auto r2 = run_experiment(c);
    c.workers = 1;
    auto r3 = run_experiment(c);
    CHECK(to_json_string(r1, true) == to_json_string(r2, true));
    CHECK(to_json_string(r1, true) == to_json_string(r3, true));

    REQUIRE(r1.per_trial.size() == 50);
    double acc = 0, mx = 0;
    for (double v : r1.per_trial) {
        acc += v;
        mx = std::max(mx, v);
    }
    CHECK(r1.summary.mean == doctest::Approx(acc / 50));
    CHECK(r1.summary.max == mx);
    CHECK(r1.normalized_mean ==
          doctest::Approx(r1.summary.mean / std::log(256.0)));
    auto sorted = r1.per_trial;
    std::sort(sorted.begin(), sorted.end());
    CHECK(r1.summary.p50 == sorted[24]);  // rank ceil(0.5 * 50) = 25
    CHECK(r1.summary.p99 == sorted[49]);
}

TEST_CASE("polar lookup on a two-node network always takes one hop") {
    ExperimentConfig c;
    c.model = Model::random_ids;
    c.n = 2;
    c.d = 1;
    c.k = 1;
    c.trials = 40;
    c.master_seed = 5;
    c.measurement = Measurement::t_polar;
    auto r = run_experiment(c);
    for (double v : r.per_trial) CHECK(v == 1.0);
    CHECK(r.reference_name == "1/g(k)");
    CHECK(r.reference_value == doctest::Approx(1.0 / g_of_k(1)));
}

TEST_CASE("first shrink measurement stays inside its deterministic bound") {
    ExperimentConfig c;
    c.model = Model::deterministic_ids;
    c.id_source.kind = IdSourceKind::sequential;
    c.n = 8;
    c.d = 3;
    c.k = 1;
    c.trials = 300;
    c.master_seed = 17;
    c.measurement = Measurement::s_sizes;
    auto r = run_experiment(c);
    // from the leftmost id, the first live range holds the top half: 4 ids
    for (double v : r.per_trial) {
        CHECK(v == std::floor(v));
        CHECK(v >= 0);
        CHECK(v <= 3);
    }
    CHECK(r.reference_name.empty());
    CHECK(std::isnan(r.reference_value));
}

TEST_CASE("sup measurements fill their extra tallies only when sampled") {
    ExperimentConfig c;
    c.model = Model::deterministic_ids;
    c.id_source.kind = IdSourceKind::sequential;
    c.n = 16;
    c.d = 4;
    c.k = 2;
    c.trials = 6;
    c.master_seed = 23;
    c.measurement = Measurement::t_sup_y;
    auto r = run_experiment(c);
    CHECK(r.sup_members.empty());
    CHECK(r.sup_nonmembers.empty());
    for (double v : r.per_trial) {
        CHECK(v >= 1);
        CHECK(v <= 4);
    }
    CHECK(r.reference_name == "c_k'");

    ExperimentConfig big;
    big.model = Model::random_ids;
    big.n = 64;
    big.d = 16;
    big.k = 4;
    big.trials = 3;
    big.master_seed = 29;
    big.measurement = Measurement::t_sup_y;
    auto rb = run_experiment(big);
    REQUIRE(rb.sup_members.size() == 3);
    REQUIRE(rb.sup_nonmembers.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rb.per_trial[i] == std::max(rb.sup_members[i], rb.sup_nonmembers[i]));
        CHECK(rb.per_trial[i] >= 1);
    }

    ExperimentConfig pairs;
    pairs.model = Model::random_ids;
    pairs.n = 32;
    pairs.d = 10;
    pairs.k = 2;
    pairs.trials = 3;
    pairs.master_seed = 31;
    pairs.measurement = Measurement::t_sup_xy;
    auto rp = run_experiment(pairs);
    CHECK(rp.sup_members.empty());
    for (double v : rp.per_trial) {
        CHECK(v >= 1);
        CHECK(v <= 10);
    }
    CHECK(rp.reference_name == "c_k*");
}

TEST_CASE("threshold walk measurement replays the shared stream") {
    ExperimentConfig c;
    c.n = 1024;
    c.d = 10;
    c.k = 4;
    c.trials = 20;
    c.master_seed = 777;
    c.measurement = Measurement::t_n;
    auto r = run_experiment(c);
    for (std::uint64_t i = 0; i < 20; ++i) {
        RngStream rng = RngStream::derive(777, stream_domain::trial, i);
        CHECK(r.per_trial[i] == static_cast<double>(sample_t_n(1024, 4, rng)));
    }
    CHECK(r.reference_name == "1/g(k)");
    CHECK(r.reference_value == doctest::Approx(1.0 / g_of_k(4)));
}

TEST_CASE("tail table rows line up with their definitions") {
    ExperimentConfig c;
    c.model = Model::deterministic_ids;
    c.id_source.kind = IdSourceKind::sequential;
    c.n = 64;
    c.d = 6;
    c.k = 2;
    c.trials = 30000;
    c.master_seed = 99;
    c.measurement = Measurement::t_polar;

    auto table = tail_comparison(c, {0, 1, 2, 3, 6});
    REQUIRE(table.rows.size() == 5);
    CHECK(table.samples_per_side == 30000);
    CHECK(table.slack == doctest::Approx(2 * dkw_epsilon(30000, 0.99)));

    const auto& r0 = table.rows[0];
    CHECK(r0.t_tail == 1.0);
    CHECK(r0.w_tail_same == 1.0);
    CHECK(r0.w_tail_prev == 1.0);
    CHECK(r0.analytic == 1.0);

    const double eps = dkw_epsilon(30000, 0.99);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CHECK(row.w_tail_same <= row.w_tail_prev);
        CHECK(row.analytic >= row.w_tail_same - eps);
        CHECK(row.t_tail <= row.w_tail_prev + table.slack);
        if (i > 0) {
            CHECK(row.t_tail <= table.rows[i - 1].t_tail);
            CHECK(row.w_tail_same <= table.rows[i - 1].w_tail_same);
        }
    }

    ExperimentConfig wrong = c;
    wrong.measurement = Measurement::s_sizes;
    CHECK_THROWS_AS(tail_comparison(wrong, {1}), DomainError);
}

TEST_CASE("result serialization carries the full story") {
    ExperimentConfig c;
    c.model = Model::deterministic_ids;
    c.id_source.kind = IdSourceKind::sequential;
    c.n = 8;
    c.d = 3;
    c.k = 2;
    c.trials = 5;
    c.master_seed = 12;
    c.measurement = Measurement::t_fixed_pair;
    auto r = run_experiment(c);

    auto parsed = nlohmann::json::parse(to_json_string(r, true));
    CHECK(parsed["format"] == "kadlab-result-v1");
    CHECK(parsed["artifact"] == "kadlab 0.1.0");
    CHECK(parsed["config"]["measurement"] == "t_fixed_pair");
    CHECK(parsed["config"]["model"] == "deterministic_ids");
    CHECK(parsed["config"]["id_source"]["kind"] == "sequential");
    CHECK(parsed["config"]["n"] == 8);
    CHECK(parsed["config"]["resolved_k"] == 2);
    CHECK_FALSE(parsed["config"].contains("workers"));
    CHECK(parsed["per_trial"].size() == 5);
    CHECK(parsed["reference"]["name"] == "c_k");
    CHECK(parsed["reference"]["value"].get<double>() ==
          doctest::Approx(constant(2, 0)));

    auto no_trials = nlohmann::json::parse(to_json_string(r, false));
    CHECK_FALSE(no_trials.contains("per_trial"));

    c.measurement = Measurement::s_sizes;
    c.n = 8;
    auto rs = run_experiment(c);
    auto sj = nlohmann::json::parse(to_json_string(rs, false));
    CHECK(sj["reference"]["value"].is_null());

    const std::string header = csv_header();
    const std::string row = to_csv_row(r);
    CHECK(std::count(header.begin(), header.end(), ',') == 16);
    CHECK(std::count(row.begin(), row.end(), ',') == 16);
    CHECK(row.substr(0, row.find(',')) == "t_fixed_pair");
    const std::string srow = to_csv_row(rs);
    CHECK(srow.back() == ',');  // no reference constant for this measurement
}
