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

#include <iosfwd>
#include <limits>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "fuzzylb/rng.hpp"

namespace fuzzylb {

using NodeId = int;

/// Undirected simple graph over nodes 0..n-1.
class NetworkGraph {
public:
    explicit NetworkGraph(int n = 0);

    int size() const { return n_; }
    /// Adds {i, j}; throws on self-loops or out-of-range ids. Returns false if already present.
    bool add_edge(NodeId i, NodeId j);
    bool has_edge(NodeId i, NodeId j) const;
    const std::set<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
    const std::vector<NodeId>& neighbours(NodeId i) const { return adj_.at(static_cast<std::size_t>(i)); }

    /// Component label per node (labels are the smallest member id).
    std::vector<NodeId> components() const;
    bool connected() const;

    bool operator==(const NetworkGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_;
    std::set<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::vector<NodeId>> adj_;
};

/// Erdos-Renyi draw followed by connectivity repair: while disconnected, add one
/// edge chosen uniformly among pairs that straddle two components.
NetworkGraph generate_random_graph(int n, double edge_prob, Rng& rng);

// Edge-list text: first line `n`, then one `i j` per line.
void write_edge_list(std::ostream& out, const NetworkGraph& g);
NetworkGraph read_edge_list(std::istream& in);

/// All-pairs hop counts.
class RoutingTable {
public:
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    RoutingTable() = default;
    RoutingTable(int n, std::vector<int> hops);

    int size() const { return n_; }
    int hops(NodeId i, NodeId j) const { return hops_[index(i, j)]; }
    bool reachable(NodeId i, NodeId j) const { return hops(i, j) != kUnreachable; }
    const std::vector<int>& data() const { return hops_; }

    bool operator==(const RoutingTable&) const = default;

private:
    std::size_t index(NodeId i, NodeId j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<int> hops_;
};

/// One BFS per source.
RoutingTable build_routing_table(const NetworkGraph& g);

/// Per-node load index: tasks queued plus the one executing.
using LoadVector = std::vector<int>;

/// Nodes whose load is strictly above `threshold`.
int count_heavy_nodes(std::span<const int> loads, double threshold);

struct CostTable {
    RoutingTable costs;
    int heavy_count = 0;

    int size() const { return costs.size(); }
    int cost(NodeId i, NodeId j) const { return costs.hops(i, j); }
};

/// Throws std::invalid_argument if loads.size() != rt.size().
CostTable build_cost_table(const RoutingTable& rt, std::span<const int> loads, double threshold);

}  // namespace fuzzylb
