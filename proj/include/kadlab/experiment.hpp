#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kadlab/node_id.hpp"
#include "kadlab/rng.hpp"

namespace kadlab {

enum class Model { deterministic_ids, random_ids };
enum class IdSourceKind { random_without_replacement, sequential, clustered, file };
enum class KRule { fixed, log_n, n_pow };
enum class Measurement { t_fixed_pair, t_sup_y, t_sup_xy, t_polar, s_sizes, t_n };

struct IdSourceSpec {
    IdSourceKind kind = IdSourceKind::random_without_replacement;
    std::string cluster_prefix;  // bits, clustered only
    double cluster_fraction = 0;
    std::string path;  // file only
};

struct ExperimentConfig {
    Model model = Model::random_ids;
    IdSourceSpec id_source;
    std::uint64_t n = 0;
    int d = 0;
    KRule k_rule = KRule::fixed;
    int k = 0;           // fixed rule
    double theta = 0;    // n_pow rule
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    Measurement measurement = Measurement::t_polar;
    int workers = 1;
    bool keep_per_trial = true;
};

// Collects every problem before failing, so one round trip fixes a config.
void validate(const ExperimentConfig& config);
int resolve_k(const ExperimentConfig& config);

// Ids in generation order (the first generated id is the lookup origin for
// pairwise measurements; sorting happens inside the trie).
std::vector<NodeId> generate_ids(const IdSourceSpec& source, std::uint64_t n, int d,
                                 RngStream& rng);

struct SummaryStats {
    double mean = 0;
    double variance = 0;  // sample variance
    double p50 = 0, p90 = 0, p99 = 0;
    double max = 0;
};
SummaryStats summarize(std::vector<double> values);

struct ExperimentResult {
    ExperimentConfig config;
    int resolved_k = 0;
    std::vector<double> per_trial;
    SummaryStats summary;
    double normalized_mean = 0;  // mean / log n
    std::string reference_name;  // matching limit constant, if any
    double reference_value = 0;  // NaN when no constant applies
    // Only for the sup-over-targets measurement at large d, where member and
    // non-member targets are tallied separately.
    std::vector<double> sup_members;
    std::vector<double> sup_nonmembers;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Per-t tail table: the configured hop-count statistic against the dominating
// product walk, both empirical, plus the analytic optimized bound.
struct TailRow {
    int t = 0;
    double t_tail = 0;        // P{T >= t}
    double w_tail_same = 0;   // P{n * B_1..B_t >= 1}
    double w_tail_prev = 0;   // P{n * B_1..B_{t-1} >= 1}
    double analytic = 0;      // optimized closed-form bound at t
};
struct TailComparisonTable {
    std::uint64_t samples_per_side = 0;
    double slack = 0;  // combined DKW half-widths at 99%
    std::vector<TailRow> rows;
};
TailComparisonTable tail_comparison(const ExperimentConfig& config,
                                    const std::vector<int>& t_values);

std::string to_json_string(const ExperimentResult& result, bool include_per_trial);
std::string csv_header();
std::string to_csv_row(const ExperimentResult& result);

std::string to_string(Model m);
std::string to_string(IdSourceKind s);
std::string to_string(KRule r);
std::string to_string(Measurement m);
Model parse_model(const std::string& s);
IdSourceKind parse_id_source_kind(const std::string& s);
KRule parse_k_rule(const std::string& s);
Measurement parse_measurement(const std::string& s);

}  // namespace kadlab
