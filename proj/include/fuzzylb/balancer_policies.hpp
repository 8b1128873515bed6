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
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "fuzzylb/fuzzy_engine.hpp"
#include "fuzzylb/node_status.hpp"
#include "fuzzylb/rng.hpp"
#include "fuzzylb/system_model.hpp"

namespace fuzzylb {

using TaskId = int;

enum class PolicyKind { Fuzzy, RoundRobin, Randomize };

/// Stable lowercase names: "fuzzy", "round_robin", "randomize".
std::string_view to_string(PolicyKind k);
std::optional<PolicyKind> parse_policy(std::string_view s);

struct MigrationDecision {
    NodeId source = 0;
    NodeId target = 0;
    TaskId task = 0;

    bool operator==(const MigrationDecision&) const = default;
};

/// A task in a node's work queue, in arrival order.
struct QueuedTask {
    TaskId id = 0;
    bool executing = false;
};

/// Transfer policy: the controller status of one node. Total; an empty
/// activation maps to Neutral.
NodeStatus fuzzy_transfer_policy(double load, int heavy_count, const FuzzyController& engine);

/// Nearest Receiver by cost, lowest id on ties, skipping `excluded` and
/// unreachable nodes.
std::optional<NodeId> location_policy(NodeId sender, std::span<const NodeStatus> statuses, const CostTable& cost,
                                      const std::set<NodeId>& excluded = {});

/// Latest-arrived task that is not executing.
std::optional<TaskId> selection_policy(std::span<const QueuedTask> queue);

/// Senders in ascending id each get at most one migration. A partner that
/// yields no task is excluded and the next one tried; a receiver that
/// accepts leaves the pool for the rest of the call.
std::vector<MigrationDecision> plan_migrations(std::span<const NodeStatus> statuses, const CostTable& cost,
                                               std::span<const std::vector<QueuedTask>> queues);

NodeId round_robin_assign(std::uint64_t task_index, int n);
NodeId randomize_assign(Rng& rng, int n);

}  // namespace fuzzylb
