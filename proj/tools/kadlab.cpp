// kadlab command line front end: constants tables, single-route traces,
// experiment runs, and the verification suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kadlab/constants.hpp"
#include "kadlab/errors.hpp"
#include "kadlab/experiment.hpp"
#include "kadlab/id_text.hpp"
#include "kadlab/network.hpp"
#include "kadlab/rng.hpp"
#include "kadlab/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr const char* kArtifact = "kadlab 0.1.0";

std::uint64_t env_seed_default() {
    const char* s = std::getenv("KADLAB_SEED");
    if (!s || !*s) return 0;
    std::string text(s);
    std::size_t pos = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size()) {
        throw kadlab::ConfigError({"KADLAB_SEED must be a nonnegative integer, got \"" + text +
                                   "\""});
    }
    return value;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw kadlab::Error("cannot open output file: " + out_path);
    out << text;
    if (!out) throw kadlab::Error("write failed: " + out_path);
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
}

std::string round_to(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// ---- constants --------------------------------------------------------------

int cmd_constants(int k_min, int k_max, int precision, const std::string& format,
                  const std::string& out_path) {
    std::string text;
    if (format == "json") {
        ordered_json doc;
        doc["format"] = "kadlab-constants-v1";
        doc["artifact"] = kArtifact;
        doc["config"] = {{"k_min", k_min}, {"k_max", k_max}, {"precision", precision}};
        doc["rows"] = ordered_json::array();
        for (int k = k_min; k <= k_max; ++k) {
            doc["rows"].push_back({{"k", k},
                                   {"c_k", kadlab::constant(k, 0)},
                                   {"c_k_prime", kadlab::constant(k, 1)},
                                   {"c_k_star", kadlab::constant(k, 2)}});
        }
        text = doc.dump(2) + "\n";
    } else if (format == "csv") {
        text = "# " + std::string(kArtifact) + " constants k_min=" + std::to_string(k_min) +
               " k_max=" + std::to_string(k_max) + " precision=" + std::to_string(precision) +
               "\n";
        text += "k,c_k,c_k_prime,c_k_star\n";
        for (int k = k_min; k <= k_max; ++k) {
            text += std::to_string(k) + "," + round_to(kadlab::constant(k, 0), precision) + "," +
                    round_to(kadlab::constant(k, 1), precision) + "," +
                    round_to(kadlab::constant(k, 2), precision) + "\n";
        }
    } else {
        text = std::string(kArtifact) + " constants  k=" + std::to_string(k_min) + ".." +
               std::to_string(k_max) + "  precision=" + std::to_string(precision) + "\n";
        const int w = precision + 7;
        char line[256];
        std::snprintf(line, sizeof line, "%4s  %*s  %*s  %*s\n", "k", w, "c_k", w, "c_k'", w,
                      "c_k*");
        text += line;
        for (int k = k_min; k <= k_max; ++k) {
            std::snprintf(line, sizeof line, "%4d  %*s  %*s  %*s\n", k, w,
                          round_to(kadlab::constant(k, 0), precision).c_str(), w,
                          round_to(kadlab::constant(k, 1), precision).c_str(), w,
                          round_to(kadlab::constant(k, 2), precision).c_str());
            text += line;
        }
    }
    emit(text, out_path);
    return 0;
}

// ---- route ------------------------------------------------------------------

int cmd_route(const std::string& ids_path, int k, const std::string& x_text,
              const std::string& y_text, std::uint64_t seed, const std::string& format,
              const std::string& out_path) {
    const std::vector<kadlab::NodeId> ids = kadlab::parse_ids_file(ids_path);
    const int d = ids.front().d();
    const kadlab::NodeId x = kadlab::parse_id(x_text, d);
    const kadlab::NodeId y = kadlab::parse_id(y_text, d);

    kadlab::RngStream rng = kadlab::RngStream::derive(seed, kadlab::stream_domain::trial, 0);
    const kadlab::Network net = kadlab::Network::build(ids, k, rng);
    if (!net.trie().contains(x)) {
        throw kadlab::MissingNodeError("origin id " + x.to_display() + " is not in " + ids_path);
    }
    const kadlab::RoutingTrace trace = net.route(x, y);

    std::string text;
    if (format == "json") {
        ordered_json doc;
        doc["format"] = "kadlab-route-v1";
        doc["artifact"] = kArtifact;
        doc["config"] = {{"ids_file", ids_path}, {"n", ids.size()},      {"d", d},
                         {"k", k},               {"x", x.to_display()},  {"y", y.to_display()},
                         {"seed", seed}};
        doc["hops"] = ordered_json::array();
        for (std::size_t i = 0; i < trace.hops.size(); ++i) {
            doc["hops"].push_back({{"hop", i},
                                   {"id", trace.hops[i].to_display()},
                                   {"lca_depth", trace.hop_depths[i]},
                                   {"subtree_size", trace.subtree_sizes[i]}});
        }
        doc["t_xy"] = trace.T();
        text = doc.dump(2) + "\n";
    } else {
        char line[256];
        text = std::string(kArtifact) + " route\n";
        std::snprintf(line, sizeof line, "ids_file=%s n=%zu d=%d k=%d seed=%llu\n",
                      ids_path.c_str(), ids.size(), d, k,
                      static_cast<unsigned long long>(seed));
        text += line;
        text += "x=" + x.to_display() + " y=" + y.to_display() + "\n";
        std::snprintf(line, sizeof line, "%4s  %-*s  %9s  %12s\n", "hop",
                      static_cast<int>(x.to_display().size()), "id", "lca_depth",
                      "subtree_size");
        text += line;
        for (std::size_t i = 0; i < trace.hops.size(); ++i) {
            std::snprintf(line, sizeof line, "%4zu  %s  %9d  %12zu\n", i,
                          trace.hops[i].to_display().c_str(), trace.hop_depths[i],
                          trace.subtree_sizes[i]);
            text += line;
        }
        text += "T_xy=" + std::to_string(trace.T()) + "\n";
    }
    emit(text, out_path);
    return 0;
}

// ---- experiment ---------------------------------------------------------------

bool parse_bool_value(const std::string& v, bool& out) {
    if (v == "true" || v == "1") { out = true; return true; }
    if (v == "false" || v == "0") { out = false; return true; }
    return false;
}

// Flat key=value lines; '#' starts a comment; keys mirror the experiment
// config. Problems are collected and reported together.
void apply_config_file(const std::string& path, kadlab::ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw kadlab::Error("cannot open config file: " + path);
    std::vector<std::string> issues;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected key=value, got \"" +
                             line + "\"");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) {
            issues.push_back("line " + std::to_string(lineno) + ": " + key + ": " + what +
                             " (got \"" + value + "\")");
        };
        try {
            if (key == "model") {
                cfg.model = kadlab::parse_model(value);
            } else if (key == "id_source") {
                cfg.id_source.kind = kadlab::parse_id_source_kind(value);
            } else if (key == "cluster_prefix") {
                cfg.id_source.cluster_prefix = value;
            } else if (key == "cluster_fraction") {
                cfg.id_source.cluster_fraction = std::stod(value);
            } else if (key == "ids_file") {
                cfg.id_source.path = value;
            } else if (key == "n") {
                cfg.n = std::stoull(value);
            } else if (key == "d") {
                cfg.d = std::stoi(value);
            } else if (key == "k_rule") {
                cfg.k_rule = kadlab::parse_k_rule(value);
            } else if (key == "k") {
                cfg.k = std::stoi(value);
            } else if (key == "theta") {
                cfg.theta = std::stod(value);
            } else if (key == "trials") {
                cfg.trials = std::stoull(value);
            } else if (key == "seed") {
                cfg.master_seed = std::stoull(value);
            } else if (key == "measurement") {
                cfg.measurement = kadlab::parse_measurement(value);
            } else if (key == "workers") {
                cfg.workers = std::stoi(value);
            } else if (key == "keep_per_trial") {
                if (!parse_bool_value(value, cfg.keep_per_trial)) bad("expected true/false");
            } else {
                issues.push_back("line " + std::to_string(lineno) + ": unknown key \"" + key +
                                 "\"");
            }
        } catch (const kadlab::DomainError& e) {
            bad(e.what());
        } catch (const std::exception&) {
            bad("not a valid number");
        }
    }
    if (!issues.empty()) throw kadlab::ConfigError(std::move(issues));
}

std::string human_experiment(const kadlab::ExperimentResult& r) {
    const kadlab::ExperimentConfig& c = r.config;
    std::ostringstream out;
    out << kArtifact << " experiment\n";
    out << "model=" << to_string(c.model) << " id_source=" << to_string(c.id_source.kind);
    if (c.id_source.kind == kadlab::IdSourceKind::clustered) {
        out << " cluster_prefix=" << c.id_source.cluster_prefix
            << " cluster_fraction=" << c.id_source.cluster_fraction;
    }
    if (c.id_source.kind == kadlab::IdSourceKind::file) out << " ids_file=" << c.id_source.path;
    out << " n=" << c.n << " d=" << c.d << " k_rule=" << to_string(c.k_rule);
    if (c.k_rule == kadlab::KRule::fixed) out << " k=" << c.k;
    if (c.k_rule == kadlab::KRule::n_pow) out << " theta=" << c.theta;
    out << " trials=" << c.trials << " seed=" << c.master_seed
        << " measurement=" << to_string(c.measurement) << " workers=" << c.workers << "\n";
    out << "resolved_k=" << r.resolved_k << "\n";
    char line[256];
    std::snprintf(line, sizeof line,
                  "mean=%.6g variance=%.6g p50=%g p90=%g p99=%g max=%g\n", r.summary.mean,
                  r.summary.variance, r.summary.p50, r.summary.p90, r.summary.p99,
                  r.summary.max);
    out << line;
    if (!r.sup_members.empty() || !r.sup_nonmembers.empty()) {
        std::snprintf(line, sizeof line,
                      "target split: member_mean=%.6g nonmember_mean=%.6g\n",
                      kadlab::summarize(r.sup_members).mean,
                      kadlab::summarize(r.sup_nonmembers).mean);
        out << line;
    }
    if (r.reference_name.empty()) {
        std::snprintf(line, sizeof line, "normalized_mean=%.6g reference=(none)\n",
                      r.normalized_mean);
    } else {
        std::snprintf(line, sizeof line, "normalized_mean=%.6g reference %s=%.6g\n",
                      r.normalized_mean, r.reference_name.c_str(), r.reference_value);
    }
    out << line;
    return out.str();
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t budget, std::uint64_t seed,
               const std::string& format, const std::string& out_path) {
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = kadlab::verify_suite_names();
    } else {
        suites.push_back(suite);
    }
    std::vector<kadlab::SuiteReport> reports;
    for (const auto& name : suites) reports.push_back(kadlab::run_verify_suite(name, budget, seed));
    int failed = 0;
    for (const auto& rep : reports) {
        for (const auto& c : rep.checks) {
            if (!c.pass) ++failed;
        }
    }

    std::string text;
    if (format == "json") {
        ordered_json doc;
        doc["format"] = "kadlab-verify-v1";
        doc["artifact"] = kArtifact;
        doc["config"] = {{"suite", suite}, {"budget", budget}, {"seed", seed}};
        doc["suites"] = ordered_json::array();
        for (const auto& rep : reports) {
            ordered_json s;
            s["suite"] = rep.suite;
            s["pass"] = rep.pass;
            s["checks"] = ordered_json::array();
            for (const auto& c : rep.checks) {
                s["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            }
            doc["suites"].push_back(s);
        }
        doc["pass"] = failed == 0;
        text = doc.dump(2) + "\n";
    } else if (format == "csv") {
        text = "# " + std::string(kArtifact) + " verify suite=" + suite +
               " budget=" + std::to_string(budget) + " seed=" + std::to_string(seed) + "\n";
        text += "suite,check,pass,detail\n";
        for (const auto& rep : reports) {
            for (const auto& c : rep.checks) {
                text += rep.suite + "," + c.name + "," + (c.pass ? "true" : "false") + "," +
                        csv_quote(c.detail) + "\n";
            }
        }
    } else {
        text = std::string(kArtifact) + " verify  suite=" + suite +
               " budget=" + std::to_string(budget) + " seed=" + std::to_string(seed) + "\n";
        for (const auto& rep : reports) {
            text += "suite " + rep.suite + ": " + (rep.pass ? "PASS" : "FAIL") + "\n";
            for (const auto& c : rep.checks) {
                text += std::string("  [") + (c.pass ? "ok" : "XX") + "] " + c.name + ": " +
                        c.detail + "\n";
            }
        }
        text += failed == 0 ? "all checks passed\n"
                            : std::to_string(failed) + " check(s) failed\n";
    }
    emit(text, out_path);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy-lookup routing model: constants, traces, experiments, verification"};
    app.require_subcommand(1);

    // constants
    auto* c_cmd = app.add_subcommand("constants", "print the limit-constant table");
    int k_min = 1, k_max = 10, precision = 10;
    std::string c_format = "human", c_out;
    c_cmd->add_option("--k-min", k_min, "smallest k")->check(CLI::PositiveNumber);
    c_cmd->add_option("--k-max", k_max, "largest k")->check(CLI::PositiveNumber);
    c_cmd->add_option("--precision", precision, "significant digits")
        ->check(CLI::Range(1, 17));
    c_cmd->add_option("--format", c_format, "output format")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    c_cmd->add_option("--out", c_out, "write output to this path");

    // route
    auto* r_cmd = app.add_subcommand("route", "trace one greedy lookup");
    std::string r_ids, r_x, r_y, r_format = "human", r_out;
    int r_k = 0;
    std::uint64_t r_seed = 0;
    bool r_seed_given = false;
    r_cmd->add_option("--ids", r_ids, "id file, one id per line")->required();
    r_cmd->add_option("--k", r_k, "bucket capacity")->required()->check(CLI::PositiveNumber);
    r_cmd->add_option("--x", r_x, "origin id (binary or hex)")->required();
    r_cmd->add_option("--y", r_y, "target id (binary or hex)")->required();
    r_cmd->add_option("--seed", r_seed, "master seed")->each([&](const std::string&) {
        r_seed_given = true;
    });
    r_cmd->add_option("--format", r_format, "output format")
        ->check(CLI::IsMember({"human", "json"}));
    r_cmd->add_option("--out", r_out, "write output to this path");

    // experiment
    auto* e_cmd = app.add_subcommand("experiment", "run a measurement over many trials");
    std::string e_config, e_model, e_source, e_prefix, e_ids, e_krule, e_meas;
    std::string e_format = "human", e_out;
    double e_fraction = 0, e_theta = 0;
    std::uint64_t e_n = 0, e_trials = 0, e_seed = 0;
    int e_d = 0, e_k = 0, e_workers = 0;
    bool e_per_trial = false, e_no_per_trial = false;
    e_cmd->add_option("--config", e_config, "key=value config file; flags override it");
    e_cmd->add_option("--model", e_model, "deterministic_ids or random_ids");
    e_cmd->add_option("--id-source", e_source,
                      "random_without_replacement, sequential, clustered, or file");
    e_cmd->add_option("--cluster-prefix", e_prefix, "shared prefix bits (clustered source)");
    e_cmd->add_option("--cluster-fraction", e_fraction, "fraction of ids in the cluster");
    e_cmd->add_option("--ids-file", e_ids, "id file (file source)");
    e_cmd->add_option("--n", e_n, "number of nodes");
    e_cmd->add_option("--d", e_d, "id bits");
    e_cmd->add_option("--k-rule", e_krule, "fixed, log_n, or n_pow");
    e_cmd->add_option("--k", e_k, "bucket capacity (fixed rule)");
    e_cmd->add_option("--theta", e_theta, "exponent (n_pow rule)");
    e_cmd->add_option("--trials", e_trials, "number of trials");
    e_cmd->add_option("--measurement", e_meas,
                      "t_fixed_pair, t_sup_y, t_sup_xy, t_polar, s_sizes, or t_n");
    e_cmd->add_option("--workers", e_workers, "worker threads");
    e_cmd->add_option("--seed", e_seed, "master seed");
    e_cmd->add_flag("--per-trial", e_per_trial, "keep the per-trial array in JSON output");
    e_cmd->add_flag("--no-per-trial", e_no_per_trial, "drop the per-trial array");
    e_cmd->add_option("--format", e_format, "output format")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    e_cmd->add_option("--out", e_out, "write output to this path");

    // verify
    auto* v_cmd = app.add_subcommand("verify", "run an invariant suite");
    std::string v_suite = "all", v_format = "human", v_out;
    std::uint64_t v_budget = 100000, v_seed = 0;
    bool v_seed_given = false;
    {
        std::vector<std::string> choices = kadlab::verify_suite_names();
        choices.insert(choices.begin(), "all");
        v_cmd->add_option("--suite", v_suite, "suite name or all")
            ->check(CLI::IsMember(choices));
    }
    v_cmd->add_option("--budget", v_budget, "trial budget per check")
        ->check(CLI::PositiveNumber);
    v_cmd->add_option("--seed", v_seed, "master seed")->each([&](const std::string&) {
        v_seed_given = true;
    });
    v_cmd->add_option("--format", v_format, "output format")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    v_cmd->add_option("--out", v_out, "write output to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_cmd->parsed()) {
            if (k_max < k_min) throw kadlab::ConfigError({"k-max must be at least k-min"});
            return cmd_constants(k_min, k_max, precision, c_format, c_out);
        }
        if (r_cmd->parsed()) {
            if (!r_seed_given) r_seed = env_seed_default();
            return cmd_route(r_ids, r_k, r_x, r_y, r_seed, r_format, r_out);
        }
        if (e_cmd->parsed()) {
            kadlab::ExperimentConfig cfg;
            cfg.master_seed = env_seed_default();
            cfg.measurement = kadlab::Measurement::t_polar;
            if (!e_config.empty()) apply_config_file(e_config, cfg);
            if (e_cmd->count("--model")) cfg.model = kadlab::parse_model(e_model);
            if (e_cmd->count("--id-source")) {
                cfg.id_source.kind = kadlab::parse_id_source_kind(e_source);
            }
            if (e_cmd->count("--cluster-prefix")) cfg.id_source.cluster_prefix = e_prefix;
            if (e_cmd->count("--cluster-fraction")) cfg.id_source.cluster_fraction = e_fraction;
            if (e_cmd->count("--ids-file")) cfg.id_source.path = e_ids;
            if (e_cmd->count("--n")) cfg.n = e_n;
            if (e_cmd->count("--d")) cfg.d = e_d;
            if (e_cmd->count("--k-rule")) cfg.k_rule = kadlab::parse_k_rule(e_krule);
            if (e_cmd->count("--k")) cfg.k = e_k;
            if (e_cmd->count("--theta")) cfg.theta = e_theta;
            if (e_cmd->count("--trials")) cfg.trials = e_trials;
            if (e_cmd->count("--seed")) cfg.master_seed = e_seed;
            if (e_cmd->count("--measurement")) cfg.measurement = kadlab::parse_measurement(e_meas);
            if (e_cmd->count("--workers")) cfg.workers = e_workers;
            if (e_per_trial) cfg.keep_per_trial = true;
            if (e_no_per_trial) cfg.keep_per_trial = false;

            const kadlab::ExperimentResult result = kadlab::run_experiment(cfg);
            std::string text;
            if (e_format == "json") {
                text = kadlab::to_json_string(result, cfg.keep_per_trial);
            } else if (e_format == "csv") {
                text = kadlab::csv_header() + "\n" + kadlab::to_csv_row(result) + "\n";
            } else {
                text = human_experiment(result);
            }
            emit(text, e_out);
            return 0;
        }
        if (v_cmd->parsed()) {
            if (!v_seed_given) v_seed = env_seed_default();
            return cmd_verify(v_suite, v_budget, v_seed, v_format, v_out);
        }
    } catch (const kadlab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
