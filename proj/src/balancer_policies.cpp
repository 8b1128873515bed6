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
#include "fuzzylb/balancer_policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace fuzzylb {

std::string_view to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::Fuzzy: return "fuzzy";
        case PolicyKind::RoundRobin: return "round_robin";
        case PolicyKind::Randomize: return "randomize";
    }
    return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view s) {
    if (s == "fuzzy") return PolicyKind::Fuzzy;
    if (s == "round_robin" || s == "round-robin" || s == "rr") return PolicyKind::RoundRobin;
    if (s == "randomize" || s == "random") return PolicyKind::Randomize;
    return std::nullopt;
}

NodeStatus fuzzy_transfer_policy(double load, int heavy_count, const FuzzyController& engine) {
    return engine.status(load, heavy_count);
}

std::optional<NodeId> location_policy(NodeId sender, std::span<const NodeStatus> statuses, const CostTable& cost,
                                      const std::set<NodeId>& excluded) {
    std::optional<NodeId> best;
    int best_cost = RoutingTable::kUnreachable;
    for (NodeId j = 0; j < static_cast<NodeId>(statuses.size()); ++j) {
        if (j == sender || statuses[j] != NodeStatus::Receiver || excluded.count(j)) continue;
        const int c = cost.cost(sender, j);
        if (c == RoutingTable::kUnreachable) continue;
        if (!best || c < best_cost) best = j, best_cost = c;
    }
    return best;
}

std::optional<TaskId> selection_policy(std::span<const QueuedTask> queue) {
    for (auto it = queue.rbegin(); it != queue.rend(); ++it)
        if (!it->executing) return it->id;
    return std::nullopt;
}

std::vector<MigrationDecision> plan_migrations(std::span<const NodeStatus> statuses, const CostTable& cost,
                                               std::span<const std::vector<QueuedTask>> queues) {
    const auto n = statuses.size();
    if (queues.size() != n || static_cast<std::size_t>(cost.size()) != n)
        throw std::invalid_argument("plan_migrations: inconsistent node counts");

    std::vector<MigrationDecision> out;
    std::set<NodeId> taken;
    for (NodeId src = 0; src < static_cast<NodeId>(n); ++src) {
        if (statuses[src] != NodeStatus::Sender) continue;
        std::set<NodeId> excluded = taken;
        while (auto partner = location_policy(src, statuses, cost, excluded)) {
            if (auto task = selection_policy(queues[src])) {
                out.push_back({src, *partner, *task});
                taken.insert(*partner);
                break;
            }
            excluded.insert(*partner);
        }
    }
    return out;
}

NodeId round_robin_assign(std::uint64_t task_index, int n) {
    if (n < 1) throw std::invalid_argument("round robin needs at least one node");
    return static_cast<NodeId>(task_index % static_cast<std::uint64_t>(n));
}

NodeId randomize_assign(Rng& rng, int n) {
    if (n < 1) throw std::invalid_argument("randomize needs at least one node");
    const auto k = static_cast<NodeId>(rng.uniform01() * n);
    return std::min(k, n - 1);
}

}  // namespace fuzzylb
