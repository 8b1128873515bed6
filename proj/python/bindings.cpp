/*
   Copyright 2026 The fuzzylb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "fuzzylb/balancer_policies.hpp"
#include "fuzzylb/fuzzy_engine.hpp"
#include "fuzzylb/key_value.hpp"
#include "fuzzylb/metrics_report.hpp"
#include "fuzzylb/simulator.hpp"
#include "fuzzylb/system_model.hpp"

namespace py = pybind11;
using namespace fuzzylb;

namespace {

EngineConfig make_engine(std::optional<Breakpoints> bp, std::optional<std::array<double, 3>> heavy, double band) {
    EngineConfig cfg;
    if (bp) cfg.breakpoints = *bp;
    if (heavy) cfg.heavy_partition = HeavyCountPartition{(*heavy)[0], (*heavy)[1], (*heavy)[2], 0};
    cfg.band = band;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fuzzy-logic dynamic load balancing with a discrete-event simulator.";
    m.attr("RNG_ALGORITHM") = std::string(Rng::kAlgorithm);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<NodeStatus>(m, "NodeStatus")
        .value("Sender", NodeStatus::Sender)
        .value("Receiver", NodeStatus::Receiver)
        .value("Neutral", NodeStatus::Neutral);

    py::enum_<PolicyKind>(m, "PolicyKind")
        .value("Fuzzy", PolicyKind::Fuzzy)
        .value("RoundRobin", PolicyKind::RoundRobin)
        .value("Randomize", PolicyKind::Randomize);

    py::class_<Breakpoints>(m, "Breakpoints")
        .def(py::init<>())
        .def(py::init([](std::array<double, 8> a) {
                 auto bp = Breakpoints::from_array(a);
                 bp.validate();
                 return bp;
             }),
             py::arg("values"))
        .def_readwrite("p", &Breakpoints::p)
        .def_readwrite("q", &Breakpoints::q)
        .def_readwrite("r", &Breakpoints::r)
        .def_readwrite("s", &Breakpoints::s)
        .def_readwrite("t", &Breakpoints::t)
        .def_readwrite("u", &Breakpoints::u)
        .def_readwrite("v", &Breakpoints::v)
        .def_readwrite("w", &Breakpoints::w)
        .def("as_list", &Breakpoints::as_array)
        .def("__repr__", [](const Breakpoints& b) {
            std::ostringstream os;
            os << "Breakpoints(" << join(std::vector<double>(b.as_array().begin(), b.as_array().end())) << ")";
            return os.str();
        });

    py::class_<HeavyCountPartition>(m, "HeavyCountPartition")
        .def_static("default_for", &HeavyCountPartition::default_for, py::arg("n"))
        .def_readonly("p_n", &HeavyCountPartition::p_n)
        .def_readonly("q_n", &HeavyCountPartition::q_n)
        .def_readonly("r_n", &HeavyCountPartition::r_n)
        .def_readonly("n", &HeavyCountPartition::n);

    m.def("fuzzify_load", &fuzzify_load, py::arg("load"), py::arg("breakpoints") = Breakpoints{},
          "Degrees for (very-light, light, moderate, heavy, very-heavy).");
    m.def("fuzzify_heavy_count", &fuzzify_heavy_count, py::arg("heavy_count"), py::arg("partition"),
          "Degrees for (less, moreequal).");
    m.def(
        "defuzzify_centroid",
        [](double receiver, double sender) { return defuzzify_centroid({receiver, sender}, OutputPartition{}); },
        py::arg("receiver"), py::arg("sender"));
    m.def("classify_status", &classify_status, py::arg("centroid"), py::arg("band") = 0.05);

    py::class_<InferenceResult>(m, "InferenceResult")
        .def_readonly("load_degrees", &InferenceResult::load_degrees)
        .def_readonly("count_degrees", &InferenceResult::count_degrees)
        .def_property_readonly("activation_receiver", [](const InferenceResult& r) { return r.activations.receiver; })
        .def_property_readonly("activation_sender", [](const InferenceResult& r) { return r.activations.sender; })
        .def_readonly("centroid", &InferenceResult::centroid)
        .def_readonly("status", &InferenceResult::status);

    py::class_<FuzzyController>(m, "FuzzyController")
        .def(py::init([](int nodes, std::optional<Breakpoints> bp, std::optional<std::array<double, 3>> heavy,
                         double band) { return FuzzyController(make_engine(bp, heavy, band), nodes); }),
             py::arg("nodes") = 5, py::arg("breakpoints") = py::none(), py::arg("heavy_partition") = py::none(),
             py::arg("band") = 0.05)
        .def("evaluate", &FuzzyController::evaluate, py::arg("load"), py::arg("heavy_count"))
        .def("status", &FuzzyController::status, py::arg("load"), py::arg("heavy_count"))
        .def_property_readonly("breakpoints", &FuzzyController::breakpoints)
        .def_property_readonly("heavy_partition", &FuzzyController::heavy_partition);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("nodes", &SimConfig::nodes)
        .def_readwrite("task_count", &SimConfig::task_count)
        .def_readwrite("arrival_rate", &SimConfig::arrival_rate)
        .def_readwrite("edge_prob", &SimConfig::edge_prob)
        .def_readwrite("policy", &SimConfig::policy)
        .def_readwrite("speed_min", &SimConfig::speed_min)
        .def_readwrite("speed_max", &SimConfig::speed_max)
        .def_readwrite("demand_min", &SimConfig::demand_min)
        .def_readwrite("demand_max", &SimConfig::demand_max)
        .def_readwrite("migration_delay_per_hop", &SimConfig::migration_delay_per_hop)
        .def_readwrite("rebalance_on_events", &SimConfig::rebalance_on_events)
        .def_readwrite("rebalance_interval", &SimConfig::rebalance_interval)
        .def_readwrite("seed", &SimConfig::seed)
        .def_property(
            "breakpoints", [](const SimConfig& c) { return c.engine.breakpoints; },
            [](SimConfig& c, const Breakpoints& b) {
                b.validate();
                c.engine.breakpoints = b;
            })
        .def("validate", &SimConfig::validate);

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("response_times", &RunMetrics::response_times)
        .def_readonly("mean_response", &RunMetrics::mean_response)
        .def_readonly("makespan", &RunMetrics::makespan)
        .def_readonly("migrations", &RunMetrics::migrations)
        .def_readonly("completed_per_node", &RunMetrics::completed_per_node)
        .def_readonly("seed", &RunMetrics::seed)
        .def_readonly("rng_algorithm", &RunMetrics::rng_algorithm)
        .def("__eq__", [](const RunMetrics& a, const RunMetrics& b) { return a == b; });

    m.def(
        "run_simulation", [](const SimConfig& cfg) { return run_simulation(cfg); }, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_experiment",
        [](const SimConfig& cfg, const std::vector<int>& task_counts, const std::vector<std::uint64_t>& seeds,
           const std::vector<PolicyKind>& policies, unsigned threads) {
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(cfg, task_counts, seeds, policies, threads);
            }
            py::dict out;
            for (std::size_t p = 0; p < r.policies.size(); ++p) out[py::cast(r.policies[p])] = r.means[p];
            return out;
        },
        py::arg("config"), py::arg("task_counts"), py::arg("seeds"),
        py::arg("policies") = std::vector<PolicyKind>{PolicyKind::Fuzzy, PolicyKind::RoundRobin, PolicyKind::Randomize},
        py::arg("threads") = 1, "Mean response time per policy, one entry per task count.");

    m.def("improvement_pct", &improvement_pct, py::arg("baseline"), py::arg("fuzzy"));
    m.def(
        "mean_improvement", [](const std::vector<double>& p) { return mean_improvement(p); }, py::arg("pcts"));

    m.def(
        "generate_random_graph",
        [](int n, double edge_prob, std::uint64_t seed) {
            Rng rng(seed, Stream::Graph);
            auto g = generate_random_graph(n, edge_prob, rng);
            return std::vector<std::pair<int, int>>(g.edges().begin(), g.edges().end());
        },
        py::arg("n"), py::arg("edge_prob"), py::arg("seed"), "Edge list of a connected random graph.");
    m.def(
        "routing_table",
        [](int n, const std::vector<std::pair<int, int>>& edges) {
            NetworkGraph g(n);
            for (auto [i, j] : edges) g.add_edge(i, j);
            const auto rt = build_routing_table(g);
            std::vector<std::vector<std::optional<int>>> out(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out[i].push_back(rt.reachable(i, j) ? std::optional<int>(rt.hops(i, j)) : std::nullopt);
            return out;
        },
        py::arg("n"), py::arg("edges"), "Hop counts; None where unreachable.");

    m.def(
        "cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "fuzzylb");
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
