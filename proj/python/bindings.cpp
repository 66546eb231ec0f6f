#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kadlab/brute_force.hpp"
#include "kadlab/checks.hpp"
#include "kadlab/constants.hpp"
#include "kadlab/dominance.hpp"
#include "kadlab/errors.hpp"
#include "kadlab/experiment.hpp"
#include "kadlab/id_text.hpp"
#include "kadlab/id_trie.hpp"
#include "kadlab/network.hpp"
#include "kadlab/rng.hpp"
#include "kadlab/samplers.hpp"
#include "kadlab/verify.hpp"

namespace py = pybind11;
using namespace kadlab;

PYBIND11_MODULE(kadlab, m) {
    m.doc() = "Greedy lookups over an id trie with random buckets: metric primitives, "
              "routing engines, limit constants, experiments, and verification suites.";

    // Specific failures first so they win over the base translator.
    py::register_exception<Error>(m, "KadlabError");
    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<MissingNodeError>(m, "MissingNodeError");

    // ---- randomness ----
    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("derive", &RngStream::derive, py::arg("master"), py::arg("domain"),
                    py::arg("index"))
        .def("next_u64", &RngStream::next_u64)
        .def("uniform01", &RngStream::uniform01)
        .def("below", &RngStream::below, py::arg("bound"));

    // ---- ids and the metric ----
    py::class_<NodeId>(m, "NodeId")
        .def_static("zeros", &NodeId::zeros, py::arg("d"))
        .def_static("ones", &NodeId::ones, py::arg("d"))
        .def_static("from_value", &NodeId::from_value, py::arg("value"), py::arg("d"))
        .def_static("from_bits", &NodeId::from_bits, py::arg("msb_first"))
        .def_property_readonly("d", &NodeId::d)
        .def("bit", &NodeId::bit, py::arg("i"))
        .def("bits", &NodeId::bits)
        .def("complement", &NodeId::complement)
        .def("xored", &NodeId::xored)
        .def("to_u64", &NodeId::to_u64)
        .def("to_bin", &NodeId::to_bin)
        .def("to_hex", &NodeId::to_hex)
        .def("to_display", &NodeId::to_display)
        .def("__eq__", [](const NodeId& a, const NodeId& b) { return a == b; })
        .def("__lt__", [](const NodeId& a, const NodeId& b) { return a < b; })
        .def("__hash__", [](const NodeId& x) { return NodeIdHash{}(x); })
        .def("__repr__", [](const NodeId& x) { return "NodeId(" + x.to_bin() + ")"; });

    py::class_<Distance>(m, "Distance")
        .def_property_readonly("d", [](const Distance& x) { return x.d; })
        .def("is_zero", &Distance::is_zero)
        .def("to_double", &Distance::to_double)
        .def("to_decimal", &Distance::to_decimal)
        .def("__eq__", [](const Distance& a, const Distance& b) { return a == b; })
        .def("__lt__", [](const Distance& a, const Distance& b) { return a < b; })
        .def("__le__", [](const Distance& a, const Distance& b) { return a <= b; })
        .def("__repr__", [](const Distance& x) { return "Distance(" + x.to_decimal() + ")"; });

    py::enum_<DistanceOrder>(m, "DistanceOrder")
        .value("closer", DistanceOrder::closer)
        .value("equal", DistanceOrder::equal)
        .value("farther", DistanceOrder::farther);

    m.def("xor_distance", &xor_distance, py::arg("x"), py::arg("y"));
    m.def("common_prefix_len", &common_prefix_len, py::arg("x"), py::arg("y"));
    m.def("bucket_index", &bucket_index, py::arg("x"), py::arg("y"));
    m.def("polar_opposite", &polar_opposite, py::arg("x"));
    m.def("compare_by_distance", &compare_by_distance, py::arg("a"), py::arg("b"),
          py::arg("target"));
    m.def("rotate_id", &rotate_id, py::arg("u"), py::arg("y"));

    m.def("parse_id", &parse_id, py::arg("text"), py::arg("d") = std::nullopt);
    m.def("parse_ids_text", &parse_ids_text, py::arg("text"), py::arg("d") = std::nullopt);
    m.def("parse_ids_file", &parse_ids_file, py::arg("path"), py::arg("d") = std::nullopt);
    m.def("format_ids", &format_ids, py::arg("ids"));

    // ---- trie ----
    py::class_<SubtreeRef>(m, "SubtreeRef")
        .def_readonly("lo", &SubtreeRef::lo)
        .def_readonly("hi", &SubtreeRef::hi)
        .def_readonly("depth", &SubtreeRef::depth)
        .def("size", &SubtreeRef::size)
        .def("empty", &SubtreeRef::empty)
        .def("__eq__", [](const SubtreeRef& a, const SubtreeRef& b) { return a == b; });

    py::class_<IdTrie>(m, "IdTrie")
        .def(py::init<std::vector<NodeId>>(), py::arg("ids"))
        .def_property_readonly("n", &IdTrie::n)
        .def_property_readonly("d", &IdTrie::d)
        .def("leaf", &IdTrie::leaf, py::arg("i"))
        .def("leaves", &IdTrie::leaves)
        .def("contains", &IdTrie::contains, py::arg("x"))
        .def("index_of", &IdTrie::index_of, py::arg("x"))
        .def("root", &IdTrie::root)
        .def("highest_right_subtree", &IdTrie::highest_right_subtree, py::arg("z"))
        .def("distance_class", &IdTrie::distance_class, py::arg("x"), py::arg("i"))
        .def("closest_leaf_index", &IdTrie::closest_leaf_index, py::arg("y"))
        .def("sample_leaves", &IdTrie::sample_leaves, py::arg("subtree"), py::arg("m"),
             py::arg("rng"));

    // ---- routing ----
    py::class_<RoutingTrace>(m, "RoutingTrace")
        .def_readonly("target", &RoutingTrace::target)
        .def_readonly("hops", &RoutingTrace::hops)
        .def_readonly("subtree_sizes", &RoutingTrace::subtree_sizes)
        .def_readonly("hop_depths", &RoutingTrace::hop_depths)
        .def_property_readonly("T", &RoutingTrace::T);

    py::class_<Network>(m, "Network")
        .def_static("build", &Network::build, py::arg("ids"), py::arg("k"), py::arg("rng"))
        .def_property_readonly("k", &Network::k)
        .def_property_readonly("n", &Network::n)
        .def_property_readonly("d", &Network::d)
        .def("trie", &Network::trie, py::return_value_policy::reference_internal)
        .def("bucket", &Network::bucket, py::arg("x"), py::arg("i"))
        .def("closest_node", &Network::closest_node, py::arg("y"))
        .def("route", &Network::route, py::arg("x"), py::arg("y"))
        .def("strongly_connected", &Network::strongly_connected);

    m.def("simulate_routing_process", &simulate_routing_process, py::arg("trie"), py::arg("x"),
          py::arg("y"), py::arg("k"), py::arg("rng"));
    m.def("brute_force_t_distribution", &brute_force_t_distribution, py::arg("ids"), py::arg("k"),
          py::arg("x"), py::arg("y"));

    // ---- constants ----
    m.def("harmonic", &harmonic, py::arg("k"));
    m.def("rate_h", &rate_h, py::arg("k"), py::arg("offset"), py::arg("r"));
    m.def("constant", &constant, py::arg("k"), py::arg("offset"));
    m.def("beta_product_moment", &beta_product_moment, py::arg("k"), py::arg("r"), py::arg("t"));
    m.def("tail_bound", &tail_bound, py::arg("n"), py::arg("k"), py::arg("t"), py::arg("r"));
    m.def("tail_bound_optimized", &tail_bound_optimized, py::arg("n"), py::arg("k"), py::arg("t"));
    m.def("g1_cdf", &g1_cdf, py::arg("k"), py::arg("i"));
    m.def("expected_g1", &expected_g1, py::arg("k"));
    m.def("g_of_k", &g_of_k, py::arg("k"));

    py::class_<ConstantsRow>(m, "ConstantsRow")
        .def_readonly("k", &ConstantsRow::k)
        .def_readonly("c_k", &ConstantsRow::c_k)
        .def_readonly("c_k_prime", &ConstantsRow::c_k_prime)
        .def_readonly("c_k_star", &ConstantsRow::c_k_star);
    m.def("constants_table", &constants_table, py::arg("k_lo"), py::arg("k_hi"));

    // ---- samplers ----
    m.def("sample_beta_min", &sample_beta_min, py::arg("k"), py::arg("rng"));
    m.def("sample_w", &sample_w, py::arg("s0"), py::arg("k"), py::arg("t"), py::arg("rng"));
    m.def("sample_g1", &sample_g1, py::arg("k"), py::arg("rng"));
    m.def("sample_t_n", &sample_t_n, py::arg("n"), py::arg("k"), py::arg("rng"));
    m.def("ceil_log2", &ceil_log2, py::arg("n"));

    // ---- dominance ----
    m.def("dkw_epsilon", &dkw_epsilon, py::arg("n"), py::arg("confidence"));
    py::class_<DominanceReport>(m, "DominanceReport")
        .def_readonly("confidence", &DominanceReport::confidence)
        .def_readonly("eps_a", &DominanceReport::eps_a)
        .def_readonly("eps_b", &DominanceReport::eps_b)
        .def_readonly("thresholds", &DominanceReport::thresholds)
        .def_readonly("gaps", &DominanceReport::gaps)
        .def_readonly("max_gap", &DominanceReport::max_gap)
        .def_readonly("slack", &DominanceReport::slack)
        .def_readonly("passed", &DominanceReport::pass);
    m.def("dominance_test", &dominance_test, py::arg("a"), py::arg("b"), py::arg("confidence"));

    // ---- experiments ----
    py::enum_<Model>(m, "Model")
        .value("deterministic_ids", Model::deterministic_ids)
        .value("random_ids", Model::random_ids);
    py::enum_<IdSourceKind>(m, "IdSourceKind")
        .value("random_without_replacement", IdSourceKind::random_without_replacement)
        .value("sequential", IdSourceKind::sequential)
        .value("clustered", IdSourceKind::clustered)
        .value("file", IdSourceKind::file);
    py::enum_<KRule>(m, "KRule")
        .value("fixed", KRule::fixed)
        .value("log_n", KRule::log_n)
        .value("n_pow", KRule::n_pow);
    py::enum_<Measurement>(m, "Measurement")
        .value("t_fixed_pair", Measurement::t_fixed_pair)
        .value("t_sup_y", Measurement::t_sup_y)
        .value("t_sup_xy", Measurement::t_sup_xy)
        .value("t_polar", Measurement::t_polar)
        .value("s_sizes", Measurement::s_sizes)
        .value("t_n", Measurement::t_n);

    py::class_<IdSourceSpec>(m, "IdSourceSpec")
        .def(py::init<>())
        .def_readwrite("kind", &IdSourceSpec::kind)
        .def_readwrite("cluster_prefix", &IdSourceSpec::cluster_prefix)
        .def_readwrite("cluster_fraction", &IdSourceSpec::cluster_fraction)
        .def_readwrite("path", &IdSourceSpec::path);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("model", &ExperimentConfig::model)
        .def_readwrite("id_source", &ExperimentConfig::id_source)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("d", &ExperimentConfig::d)
        .def_readwrite("k_rule", &ExperimentConfig::k_rule)
        .def_readwrite("k", &ExperimentConfig::k)
        .def_readwrite("theta", &ExperimentConfig::theta)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("measurement", &ExperimentConfig::measurement)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_readwrite("keep_per_trial", &ExperimentConfig::keep_per_trial);

    m.def("validate", &validate, py::arg("config"));
    m.def("resolve_k", &resolve_k, py::arg("config"));
    m.def("generate_ids", &generate_ids, py::arg("source"), py::arg("n"), py::arg("d"),
          py::arg("rng"));

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("mean", &SummaryStats::mean)
        .def_readonly("variance", &SummaryStats::variance)
        .def_readonly("p50", &SummaryStats::p50)
        .def_readonly("p90", &SummaryStats::p90)
        .def_readonly("p99", &SummaryStats::p99)
        .def_readonly("max", &SummaryStats::max);
    m.def("summarize", &summarize, py::arg("values"));

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("config", &ExperimentResult::config)
        .def_readonly("resolved_k", &ExperimentResult::resolved_k)
        .def_readonly("per_trial", &ExperimentResult::per_trial)
        .def_readonly("summary", &ExperimentResult::summary)
        .def_readonly("normalized_mean", &ExperimentResult::normalized_mean)
        .def_readonly("reference_name", &ExperimentResult::reference_name)
        .def_readonly("reference_value", &ExperimentResult::reference_value)
        .def_readonly("sup_members", &ExperimentResult::sup_members)
        .def_readonly("sup_nonmembers", &ExperimentResult::sup_nonmembers);
    m.def("run_experiment", &run_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<TailRow>(m, "TailRow")
        .def_readonly("t", &TailRow::t)
        .def_readonly("t_tail", &TailRow::t_tail)
        .def_readonly("w_tail_same", &TailRow::w_tail_same)
        .def_readonly("w_tail_prev", &TailRow::w_tail_prev)
        .def_readonly("analytic", &TailRow::analytic);
    py::class_<TailComparisonTable>(m, "TailComparisonTable")
        .def_readonly("samples_per_side", &TailComparisonTable::samples_per_side)
        .def_readonly("slack", &TailComparisonTable::slack)
        .def_readonly("rows", &TailComparisonTable::rows);
    m.def("tail_comparison", &tail_comparison, py::arg("config"), py::arg("t_values"),
          py::call_guard<py::gil_scoped_release>());

    m.def("to_json_string", &to_json_string, py::arg("result"), py::arg("include_per_trial"));
    m.def("csv_header", &csv_header);
    m.def("to_csv_row", &to_csv_row, py::arg("result"));

    // ---- verification ----
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::pass)
        .def_readonly("detail", &CheckResult::detail);
    py::class_<SuiteReport>(m, "SuiteReport")
        .def_readonly("suite", &SuiteReport::suite)
        .def_readonly("budget", &SuiteReport::budget)
        .def_readonly("seed", &SuiteReport::seed)
        .def_readonly("checks", &SuiteReport::checks)
        .def_readonly("passed", &SuiteReport::pass);
    m.def("verify_suite_names", [] { return verify_suite_names(); });
    m.def("run_verify_suite", &run_verify_suite, py::arg("suite"), py::arg("budget"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());
}
