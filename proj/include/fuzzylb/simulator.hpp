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
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzylb/balancer_policies.hpp"
#include "fuzzylb/fuzzy_engine.hpp"
#include "fuzzylb/system_model.hpp"

namespace fuzzylb {

struct SimConfig {
    int nodes = 5;
    int task_count = 10;
    /// System-wide arrival rate of the Poisson task stream.
    double arrival_rate = 1.0;
    double edge_prob = 0.2;
    PolicyKind policy = PolicyKind::Fuzzy;
    EngineConfig engine;
    double speed_min = 0.5, speed_max = 1.5;
    double demand_min = 0.5, demand_max = 1.5;
    double migration_delay_per_hop = 0.1;
    /// Rebalance after every arrival and completion (Fuzzy only).
    bool rebalance_on_events = true;
    /// Additional periodic rebalance; 0 disables it.
    double rebalance_interval = 0.0;
    std::uint64_t seed = 1;
    /// Use this topology instead of drawing one.
    std::optional<NetworkGraph> graph;

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
};

struct RunMetrics {
    /// Indexed by task id.
    std::vector<double> response_times;
    double mean_response = 0.0;
    double makespan = 0.0;
    int migrations = 0;
    std::vector<int> completed_per_node;
    std::uint64_t seed = 0;
    std::string rng_algorithm;

    bool operator==(const RunMetrics&) const = default;
};

enum class EventKind { Completion = 0, Arrival = 1, Rebalance = 2 };

struct NodeView {
    double speed = 1.0;
    /// Head is the executing task when busy.
    std::vector<QueuedTask> queue;
    /// Migrations in flight towards this node.
    int inbound = 0;
    bool busy = false;
};

/// Hooks for tests and tracing; all default to no-ops.
class SimObserver {
public:
    virtual ~SimObserver() = default;
    virtual void on_event(double /*time*/, EventKind /*kind*/, std::span<const NodeView> /*nodes*/) {}
    virtual void on_task_start(TaskId, NodeId, double /*time*/) {}
    virtual void on_task_complete(TaskId, NodeId, double /*time*/) {}
    virtual void on_migration(const MigrationDecision&, double /*decided_at*/, double /*ready_at*/) {}
};

RunMetrics run_simulation(const SimConfig& cfg, SimObserver* observer = nullptr);

struct ExperimentResult {
    std::vector<int> task_counts;
    std::vector<PolicyKind> policies;
    std::vector<std::uint64_t> seeds;
    /// means[p][k]: mean over seeds of the per-run mean response time.
    std::vector<std::vector<double>> means;

    double mean(PolicyKind p, int task_count) const;
};

/// Every (policy, task count, seed) run shares the seed's random streams.
/// Cells run on up to `threads` workers; the result does not depend on it.
ExperimentResult run_experiment(const SimConfig& tmpl, const std::vector<int>& task_counts,
                                const std::vector<std::uint64_t>& seeds, const std::vector<PolicyKind>& policies,
                                unsigned threads = 1);

}  // namespace fuzzylb
