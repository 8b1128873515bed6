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
// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fuzzylb/fuzzy_engine.hpp"
#include "fuzzylb/metrics_report.hpp"
#include "fuzzylb/simulator.hpp"
#include "fuzzylb/system_model.hpp"
#include "oracles.hpp"
#include "sim_checks.hpp"

namespace {

using namespace fuzzylb;

struct Outcome {
    bool pass;
    std::string detail;
};

const std::vector<double> kRandomize{3, 4, 7, 11, 16};
const std::vector<double> kRoundRobin{2, 3, 6, 9, 13};
const std::vector<double> kFuzzy{1, 2, 4, 7, 11};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome improvement_cells() {
    const std::vector<double> vs_rr{50, 33.3, 33.3, 22.2, 15.4};
    const std::vector<double> vs_rand{66.7, 50, 42.9, 36.4, 31.25};
    double worst = 0;
    for (std::size_t k = 0; k < 5; ++k) {
        worst = std::max(worst, std::abs(improvement_pct(kRoundRobin[k], kFuzzy[k]) - vs_rr[k]));
        worst = std::max(worst, std::abs(improvement_pct(kRandomize[k], kFuzzy[k]) - vs_rand[k]));
    }
    return {worst <= 0.05, "max cell error " + fmt("%.4f", worst) + " pp over 10 cells"};
}

Outcome mean_improvements() {
    std::vector<double> rr, rand;
    for (std::size_t k = 0; k < 5; ++k) {
        rr.push_back(improvement_pct(kRoundRobin[k], kFuzzy[k]));
        rand.push_back(improvement_pct(kRandomize[k], kFuzzy[k]));
    }
    const double a = mean_improvement(rr), b = mean_improvement(rand);
    return {std::abs(a - 30.84) <= 0.05 && std::abs(b - 45.45) <= 0.05,
            "vs round_robin " + fmt("%.3f", a) + ", vs randomize " + fmt("%.3f", b)};
}

Outcome ordering_replication() {
    const std::vector<int> counts{2, 4, 6, 8, 10};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 30; ++s) seeds.push_back(s);
    const auto r = run_experiment(SimConfig{}, counts, seeds,
                                  {PolicyKind::Fuzzy, PolicyKind::RoundRobin, PolicyKind::Randomize}, 4);
    const auto t = ComparisonTable::from_experiment(r);
    int ordered = 0;
    std::string cols;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double f = t.response(PolicyKind::Fuzzy, k), rr = t.response(PolicyKind::RoundRobin, k),
                     rd = t.response(PolicyKind::Randomize, k);
        const bool ok = f < rr && rr < rd;
        ordered += ok;
        cols += (k ? " " : "") + std::to_string(counts[k]) + (ok ? ":ok" : ":no");
    }
    const double vs_rr = t.mean_fuzzy_improvement(PolicyKind::RoundRobin);
    const double vs_rand = t.mean_fuzzy_improvement(PolicyKind::Randomize);
    return {ordered >= 4 && vs_rr >= 10 && vs_rand >= 20,
            "ordered columns " + std::to_string(ordered) + "/5 [" + cols + "], improvement vs round_robin " +
                fmt("%.2f", vs_rr) + "% (need 10), vs randomize " + fmt("%.2f", vs_rand) + "% (need 20)"};
}

Outcome plateau_suite() {
    int checked = 0, wrong = 0;
    for (const auto& bp : {Breakpoints{}, Breakpoints::from_array({2, 4, 6, 8, 10, 12, 14, 20})}) {
        const FuzzyController ctl(EngineConfig{.breakpoints = bp}, 5);
        const auto& h = ctl.heavy_partition();
        const double less = h.p_n / 2, more = (h.r_n + h.n) / 2.0;
        const double vl = bp.p / 2, l = (bp.q + bp.r) / 2, m = bp.s, hv = (bp.t + bp.u) / 2, vh = (bp.v + bp.w) / 2;
        const struct {
            double load, heavy;
            NodeStatus want;
        } cases[] = {{vl, less, NodeStatus::Receiver}, {vh, more, NodeStatus::Sender},
                     {hv, more, NodeStatus::Receiver}, {hv, less, NodeStatus::Sender},
                     {l, less, NodeStatus::Sender},    {l, more, NodeStatus::Receiver},
                     {m, more, NodeStatus::Receiver},  {m, less, NodeStatus::Sender}};
        for (const auto& c : cases) {
            ++checked;
            if (ctl.status(c.load, c.heavy) != c.want) ++wrong;
        }
    }
    return {wrong == 0, std::to_string(checked - wrong) + "/" + std::to_string(checked) + " plateau inputs match"};
}

Outcome centroid_oracle() {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> act(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double a = act(gen), b = act(gen);
        worst = std::max(worst, std::abs(defuzzify_centroid({a, b}, {}) -
                                         oracle::grid_centroid(a, b, {0, 0, 0.5}, {0.5, 1, 1})));
    }
    return {worst <= 1e-6, "max |closed form - grid| = " + fmt("%.3g", worst) + " over 1000 pairs"};
}

Outcome routing_oracle() {
    std::mt19937 gen(6);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 8);
        const auto edges = oracle::random_edges(n, std::uniform_real_distribution<double>(0, 0.8)(gen), gen);
        NetworkGraph g(n);
        for (auto [i, j] : edges) g.add_edge(i, j);
        if (build_routing_table(g).data() != oracle::floyd_warshall(n, edges)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(100 - mismatches) + "/100 graphs match Floyd-Warshall"};
}

Outcome determinism() {
    std::mt19937 gen(7);
    int runs = 0, differing = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = testing::random_config(gen);
        ++runs;
        if (!(run_simulation(c) == run_simulation(c))) ++differing;
    }
    auto cli_out = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        cli::run(args, out, err);
        return out.str() + "\x1f" + err.str();
    };
    const std::vector<std::vector<std::string>> invocations{
        {"fuzzylb", "simulate", "--policy", "fuzzy", "--tasks", "10", "--seed", "7"},
        {"fuzzylb", "simulate", "--policy", "randomize", "--tasks", "40", "--seed", "3", "--format", "csv"},
        {"fuzzylb", "simulate", "--policy", "round_robin", "--nodes", "8", "--seed", "11"},
        {"fuzzylb", "compare", "--seeds", "5", "--threads", "4"},
    };
    for (const auto& args : invocations) {
        ++runs;
        if (cli_out(args) != cli_out(args)) ++differing;
    }
    return {differing == 0, std::to_string(runs - differing) + "/" + std::to_string(runs) + " repeated runs identical"};
}

Outcome conservation() {
    std::mt19937 gen(8);
    int bad = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        const auto c = testing::random_config(gen);
        testing::InvariantObserver obs(c);
        try {
            obs.finish(run_simulation(c, &obs));
        } catch (const std::exception& e) {
            obs.errors.push_back(e.what());
        }
        if (!obs.ok()) {
            if (!bad) first = obs.errors.front();
            ++bad;
        }
    }
    return {bad == 0, std::to_string(100 - bad) + "/100 configs clean" + (bad ? " (first: " + first + ")" : "")};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"improvement percentages of the reference table", improvement_cells},
        {"mean improvement per baseline", mean_improvements},
        {"policy ordering and aggregate improvement over 30 seeds", ordering_replication},
        {"fuzzy controller plateau suite", plateau_suite},
        {"centroid closed form vs grid oracle", centroid_oracle},
        {"routing table vs Floyd-Warshall oracle", routing_oracle},
        {"determinism of repeated runs", determinism},
        {"task conservation and migration safety", conservation},
    };
    int failures = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("%s  criterion %d  %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
