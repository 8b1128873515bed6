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
#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "fuzzylb/balancer_policies.hpp"
#include "fuzzylb/fuzzy_engine.hpp"
#include "fuzzylb/key_value.hpp"
#include "fuzzylb/metrics_report.hpp"
#include "fuzzylb/rng.hpp"
#include "fuzzylb/simulator.hpp"
#include "fuzzylb/system_model.hpp"

namespace fuzzylb::cli {

namespace {

enum Scope : unsigned { kSimulate = 1, kCompare = 2, kFuzzEval = 4, kAll = 7 };

struct Settings {
    SimConfig sim;
    int seeds = 30;
    std::vector<int> task_counts{2, 4, 6, 8, 10};
    std::vector<PolicyKind> policies;  // empty: subcommand default
    ReportFormat format = ReportFormat::Table;
    std::string out;
    unsigned threads = 0;  // 0: hardware concurrency
    std::string graph_path;
    double load = 0.0;
    double heavy = 0.0;
    bool rules_replaced = false;
};

struct Key {
    std::string name;
    unsigned scope;
    std::string help;
    std::function<void(Settings&, const std::string&)> set;
    std::function<std::vector<std::string>(const Settings&)> get;
};

std::string fmt(double x) { return format_double(x); }

std::pair<double, double> parse_range(const std::string& v) {
    auto xs = parse_double_list(v);
    if (xs.size() != 2) throw ConfigError("expected a range lo,hi");
    return {xs[0], xs[1]};
}

std::vector<PolicyKind> parse_policies(const std::string& v) {
    if (v == "all") return {PolicyKind::Fuzzy, PolicyKind::RoundRobin, PolicyKind::Randomize};
    std::vector<PolicyKind> out;
    for (const auto& name : split(v, ',')) {
        auto p = parse_policy(name);
        if (!p) throw ConfigError("unknown policy '" + name + "' (fuzzy, round_robin, randomize, all)");
        out.push_back(*p);
    }
    return out;
}

std::string policy_list(const std::vector<PolicyKind>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::string(to_string(ps[i]));
    return s;
}

std::vector<PolicyKind> effective_policies(const Settings& s, unsigned scope) {
    if (!s.policies.empty()) return s.policies;
    if (scope == kCompare) return {PolicyKind::Fuzzy, PolicyKind::RoundRobin, PolicyKind::Randomize};
    return {PolicyKind::Fuzzy};
}

void engine_key(Settings& s, const std::string& key, const std::string& value) {
    apply_engine_key(s.sim.engine, key, value, s.rules_replaced);
}

std::string output_set(const MembershipFunction& mf) { return join(mf.knots()); }

std::vector<Key> make_keys(unsigned active_scope) {
    std::vector<Key> k;
    auto one = [](std::string v) { return std::vector<std::string>{std::move(v)}; };
    k.push_back({"nodes", kAll, "number of nodes (default 5)",
                 [](Settings& s, const std::string& v) { s.sim.nodes = static_cast<int>(parse_int(v)); },
                 [=](const Settings& s) { return one(std::to_string(s.sim.nodes)); }});
    k.push_back({"tasks", kSimulate, "number of tasks in the run (default 10)",
                 [](Settings& s, const std::string& v) { s.sim.task_count = static_cast<int>(parse_int(v)); },
                 [=](const Settings& s) { return one(std::to_string(s.sim.task_count)); }});
    k.push_back({"task-counts", kCompare, "task counts for the comparison grid (default 2,4,6,8,10)",
                 [](Settings& s, const std::string& v) {
                     s.task_counts = parse_int_list(v);
                     for (int t : s.task_counts)
                         if (t < 1) throw ConfigError("task counts must be >= 1");
                 },
                 [=](const Settings& s) { return one(join(s.task_counts)); }});
    k.push_back({"seed", kSimulate | kCompare, "random seed; compare uses seed..seed+seeds-1 (default 1)",
                 [](Settings& s, const std::string& v) {
                     auto x = parse_int(v);
                     if (x < 0) throw ConfigError("seed must be >= 0");
                     s.sim.seed = static_cast<std::uint64_t>(x);
                 },
                 [=](const Settings& s) { return one(std::to_string(s.sim.seed)); }});
    k.push_back({"seeds", kCompare, "number of replications per cell (default 30)",
                 [](Settings& s, const std::string& v) {
                     s.seeds = static_cast<int>(parse_int(v));
                     if (s.seeds < 1) throw ConfigError("seeds must be >= 1");
                 },
                 [=](const Settings& s) { return one(std::to_string(s.seeds)); }});
    k.push_back({"policy", kSimulate | kCompare,
                 "fuzzy | round_robin | randomize; compare accepts a list or 'all' (default)",
                 [](Settings& s, const std::string& v) { s.policies = parse_policies(v); },
                 [=](const Settings& s) { return one(policy_list(effective_policies(s, active_scope))); }});
    k.push_back({"edge-prob", kSimulate | kCompare, "edge probability of the random graph (default 0.2)",
                 [](Settings& s, const std::string& v) { s.sim.edge_prob = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.edge_prob)); }});
    k.push_back({"arrival-rate", kSimulate | kCompare, "system-wide task arrival rate (default 1)",
                 [](Settings& s, const std::string& v) { s.sim.arrival_rate = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.arrival_rate)); }});
    k.push_back({"speed-range", kSimulate | kCompare, "processor speed range lo,hi (default 0.5,1.5)",
                 [](Settings& s, const std::string& v) { std::tie(s.sim.speed_min, s.sim.speed_max) = parse_range(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.speed_min) + "," + fmt(s.sim.speed_max)); }});
    k.push_back({"demand-range", kSimulate | kCompare, "task service demand range lo,hi (default 0.5,1.5)",
                 [](Settings& s, const std::string& v) { std::tie(s.sim.demand_min, s.sim.demand_max) = parse_range(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.demand_min) + "," + fmt(s.sim.demand_max)); }});
    k.push_back({"migration-delay", kSimulate | kCompare, "migration delay per hop (default 0.1)",
                 [](Settings& s, const std::string& v) { s.sim.migration_delay_per_hop = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.migration_delay_per_hop)); }});
    k.push_back({"rebalance-on-events", kSimulate | kCompare, "rebalance after arrivals and completions (default true)",
                 [](Settings& s, const std::string& v) { s.sim.rebalance_on_events = parse_bool(v); },
                 [=](const Settings& s) { return one(s.sim.rebalance_on_events ? "true" : "false"); }});
    k.push_back({"rebalance-interval", kSimulate | kCompare, "periodic rebalance interval, 0 = off (default 0)",
                 [](Settings& s, const std::string& v) { s.sim.rebalance_interval = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.sim.rebalance_interval)); }});
    k.push_back({"graph", kSimulate | kCompare, "edge-list file to use instead of a random graph",
                 [](Settings& s, const std::string& v) { s.graph_path = v; },
                 [=](const Settings& s) { return s.graph_path.empty() ? std::vector<std::string>{} : one(s.graph_path); }});
    k.push_back({"breakpoints", kAll, "load-index breakpoints p,q,r,s,t,u,v,w",
                 [](Settings& s, const std::string& v) { engine_key(s, "breakpoints", v); },
                 [=](const Settings& s) {
                     auto a = s.sim.engine.breakpoints.as_array();
                     return one(join(std::vector<double>(a.begin(), a.end())));
                 }});
    k.push_back({"heavy-partition", kAll, "heavy-node count knots pN,qN,rN (default ceil(0.2n),ceil(0.4n),ceil(0.6n))",
                 [](Settings& s, const std::string& v) { engine_key(s, "heavy-partition", v); },
                 [=](const Settings& s) {
                     const auto& h = s.sim.engine.heavy_partition;
                     if (!h) return std::vector<std::string>{};
                     return one(join(std::vector<double>{h->p_n, h->q_n, h->r_n}));
                 }});
    k.push_back({"band", kAll, "neutral band half-width around 0.5 (default 0.05)",
                 [](Settings& s, const std::string& v) { engine_key(s, "band", v); },
                 [=](const Settings& s) { return one(fmt(s.sim.engine.band)); }});
    for (const char* which : {"output-receiver", "output-neutral", "output-sender"}) {
        const std::string name = which;
        k.push_back({name, kAll, "output set knots a,b,c[,d]",
                     [name](Settings& s, const std::string& v) { engine_key(s, name, v); },
                     [name](const Settings& s) {
                         const auto& o = s.sim.engine.output;
                         const auto& mf = name == "output-receiver" ? o.receiver
                                          : name == "output-neutral" ? o.neutral
                                                                     : o.sender;
                         return std::vector<std::string>{output_set(mf)};
                     }});
    }
    k.push_back({"rule", kAll, "rule '<load|any> <count|any> -> <sender|receiver>' (repeatable; replaces defaults)",
                 [](Settings& s, const std::string& v) { engine_key(s, "rule", v); },
                 [](const Settings& s) {
                     std::vector<std::string> out;
                     for (const auto& r : s.sim.engine.rules.rules()) out.push_back(format_rule(r));
                     return out;
                 }});
    k.push_back({"format", kSimulate | kCompare, "table | csv (default table)",
                 [](Settings& s, const std::string& v) {
                     if (v == "table") s.format = ReportFormat::Table;
                     else if (v == "csv") s.format = ReportFormat::Csv;
                     else throw ConfigError("format must be table or csv");
                 },
                 [=](const Settings& s) { return one(std::string(to_string(s.format))); }});
    k.push_back({"out", kAll, "write output to this file instead of stdout",
                 [](Settings& s, const std::string& v) { s.out = v; },
                 [=](const Settings& s) { return s.out.empty() ? std::vector<std::string>{} : one(s.out); }});
    k.push_back({"threads", kCompare, "worker threads, 0 = hardware concurrency (default 0)",
                 [](Settings& s, const std::string& v) {
                     auto x = parse_int(v);
                     if (x < 0) throw ConfigError("threads must be >= 0");
                     s.threads = static_cast<unsigned>(x);
                 },
                 [=](const Settings& s) { return one(std::to_string(s.threads)); }});
    k.push_back({"load", kFuzzEval, "load index to evaluate",
                 [](Settings& s, const std::string& v) { s.load = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.load)); }});
    k.push_back({"heavy", kFuzzEval, "heavy-node count to evaluate",
                 [](Settings& s, const std::string& v) { s.heavy = parse_double(v); },
                 [=](const Settings& s) { return one(fmt(s.heavy)); }});
    return k;
}

void write_settings(std::ostream& os, const Settings& s, const std::vector<Key>& keys, unsigned scope,
                    std::string_view prefix) {
    for (const auto& key : keys) {
        if (!(key.scope & scope)) continue;
        for (const auto& v : key.get(s)) os << prefix << key.name << " = " << v << '\n';
    }
}

void write_metadata(std::ostream& os, std::string_view command, const Settings& s, const std::vector<Key>& keys,
                    unsigned scope) {
    os << "# fuzzylb " << command << '\n';
    os << "# rng-algorithm = " << Rng::kAlgorithm << '\n';
    write_settings(os, s, keys, scope, "# ");
}

SimConfig finalize_sim(const Settings& s) {
    SimConfig cfg = s.sim;
    if (!s.graph_path.empty()) {
        std::ifstream in(s.graph_path);
        if (!in) throw ConfigError("cannot open graph file '" + s.graph_path + "'");
        cfg.graph = read_edge_list(in);
    }
    cfg.validate();
    return cfg;
}

int do_simulate(std::ostream& os, const Settings& s, const std::vector<Key>& keys) {
    auto policies = effective_policies(s, kSimulate);
    if (policies.size() != 1) throw ConfigError("simulate takes exactly one policy");
    SimConfig cfg = finalize_sim(s);
    cfg.policy = policies.front();
    const RunMetrics m = run_simulation(cfg);

    write_metadata(os, "simulate", s, keys, kSimulate);
    const std::string rt = join(m.response_times);
    std::vector<int> per_node = m.completed_per_node;
    if (s.format == ReportFormat::Csv) {
        os << "seed,policy,tasks,mean_response,makespan,migrations\n";
        os << m.seed << ',' << to_string(cfg.policy) << ',' << cfg.task_count << ',' << fmt(m.mean_response) << ','
           << fmt(m.makespan) << ',' << m.migrations << '\n';
    } else {
        os << "seed = " << m.seed << '\n'
           << "rng = " << m.rng_algorithm << '\n'
           << "policy = " << to_string(cfg.policy) << '\n'
           << "tasks = " << cfg.task_count << '\n'
           << "mean_response = " << fmt(m.mean_response) << '\n'
           << "makespan = " << fmt(m.makespan) << '\n'
           << "migrations = " << m.migrations << '\n'
           << "completed_per_node = " << join(per_node) << '\n'
           << "response_times = " << rt << '\n';
    }
    return kExitOk;
}

int do_compare(std::ostream& os, const Settings& s, const std::vector<Key>& keys) {
    SimConfig cfg = finalize_sim(s);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < s.seeds; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
    const unsigned threads = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto result = run_experiment(cfg, s.task_counts, seeds, effective_policies(s, kCompare), threads);

    write_metadata(os, "compare", s, keys, kCompare);
    emit_report(os, ComparisonTable::from_experiment(result), s.format);
    return kExitOk;
}

int do_fuzz_eval(std::ostream& os, const Settings& s) {
    const FuzzyController engine(s.sim.engine, s.sim.nodes);
    const auto res = engine.evaluate(s.load, s.heavy);
    const auto& bp = engine.breakpoints();
    const auto& hp = engine.heavy_partition();
    os << "load = " << fmt(s.load);
    if (s.load > bp.w) os << " (clamped to " << fmt(bp.w) << ")";
    os << '\n' << "heavy = " << fmt(s.heavy) << '\n';
    for (std::size_t i = 0; i < kLoadTermCount; ++i)
        os << "mu[" << to_string(static_cast<LoadTerm>(i)) << "] = " << fmt(res.load_degrees[i]) << '\n';
    os << "heavy-partition = " << join(std::vector<double>{hp.p_n, hp.q_n, hp.r_n}) << " (n = " << hp.n << ")\n";
    for (std::size_t i = 0; i < kCountTermCount; ++i)
        os << "mu[" << to_string(static_cast<CountTerm>(i)) << "] = " << fmt(res.count_degrees[i]) << '\n';
    os << "activation[receiver] = " << fmt(res.activations.receiver) << '\n'
       << "activation[sender] = " << fmt(res.activations.sender) << '\n'
       << "centroid = " << (res.centroid ? fmt(*res.centroid) : std::string("none (no rule fired)")) << '\n'
       << "status = " << to_string(res.status) << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fuzzy-logic dynamic load balancing simulator", argv.empty() ? "fuzzylb" : argv.front()};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        unsigned scope;
        std::vector<Key> keys;
        std::map<std::string, CLI::Option*> opts;
    };
    std::map<std::string, std::string> raw;
    std::vector<std::string> raw_rules;
    std::string config_path;
    bool show_config = false;

    std::vector<Sub> subs;
    const std::pair<const char*, unsigned> defs[] = {
        {"simulate", kSimulate}, {"compare", kCompare}, {"fuzz-eval", kFuzzEval}};
    const char* descriptions[] = {"run one simulation and print its metrics",
                                  "run the policy comparison grid and print the report",
                                  "evaluate the fuzzy controller for one input"};
    for (std::size_t i = 0; i < 3; ++i) {
        Sub sub{app.add_subcommand(defs[i].first, descriptions[i]), defs[i].second, make_keys(defs[i].second), {}};
        for (const auto& key : sub.keys) {
            if (!(key.scope & sub.scope)) continue;
            if (key.name == "rule") sub.opts[key.name] = sub.app->add_option("--rule", raw_rules, key.help);
            else sub.opts[key.name] = sub.app->add_option("--" + key.name, raw[key.name], key.help);
        }
        sub.app->add_option("--config", config_path, "key=value configuration file (flags override it)");
        sub.app->add_flag("--show-config", show_config, "print the effective configuration and exit");
        subs.push_back(std::move(sub));
    }

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
    }

    const Sub* active = nullptr;
    for (const auto& s : subs)
        if (s.app->parsed()) active = &s;
    if (!active) {
        err << app.help();
        return kExitConfigError;
    }

    Settings settings;
    try {
        auto apply = [&](const std::string& name, const std::string& value) {
            for (const auto& key : active->keys)
                if (key.name == name) {
                    if (key.scope & active->scope) {
                        try {
                            key.set(settings, value);
                        } catch (const ConfigError&) {
                            throw;
                        } catch (const std::invalid_argument& e) {
                            throw ConfigError(e.what());
                        }
                    }
                    return true;
                }
            return false;
        };
        auto apply_named = [&](const std::string& name, const std::string& value) {
            try {
                apply(name, value);
            } catch (const ConfigError& e) {
                throw ConfigError(name + ": " + e.what());
            }
        };

        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
            for (const auto& kv : parse_key_values(in)) {
                bool known = false;
                try {
                    known = apply(kv.key, kv.value);
                } catch (const ConfigError& e) {
                    throw ConfigError(config_path + ":" + std::to_string(kv.line) + ": " + kv.key + ": " + e.what());
                }
                if (!known)
                    throw ConfigError(config_path + ":" + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
            }
        }
        for (const auto& key : active->keys) {
            if (!(key.scope & active->scope) || key.name == "rule") continue;
            auto it = active->opts.find(key.name);
            if (it != active->opts.end() && it->second->count() > 0) apply_named(key.name, raw[key.name]);
        }
        if (!raw_rules.empty()) {
            settings.rules_replaced = false;
            for (const auto& r : raw_rules) apply_named("rule", r);
        }
        // Reject inconsistent settings before anything runs.
        FuzzyController check(settings.sim.engine, settings.sim.nodes);
        if (active->scope != kFuzzEval) {
            SimConfig probe = settings.sim;
            probe.validate();
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << active->app->help();
        return kExitConfigError;
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (!settings.out.empty()) {
        file.open(settings.out);
        if (!file) {
            err << "error: cannot write '" << settings.out << "'\n";
            return kExitConfigError;
        }
        os = &file;
    }

    try {
        if (show_config) {
            write_settings(*os, settings, active->keys, active->scope, "");
            return kExitOk;
        }
        switch (active->scope) {
            case kSimulate: return do_simulate(*os, settings, active->keys);
            case kCompare: return do_compare(*os, settings, active->keys);
            default: return do_fuzz_eval(*os, settings);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
}

}  // namespace fuzzylb::cli
