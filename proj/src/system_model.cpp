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
#include "fuzzylb/system_model.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "fuzzylb/key_value.hpp"

namespace fuzzylb {

NetworkGraph::NetworkGraph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 0) throw std::invalid_argument("node count must be >= 0");
}

bool NetworkGraph::add_edge(NodeId i, NodeId j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    if (!edges_.emplace(std::min(i, j), std::max(i, j)).second) return false;
    adj_[static_cast<std::size_t>(i)].push_back(j);
    adj_[static_cast<std::size_t>(j)].push_back(i);
    return true;
}

bool NetworkGraph::has_edge(NodeId i, NodeId j) const {
    return edges_.count({std::min(i, j), std::max(i, j)}) != 0;
}

std::vector<NodeId> NetworkGraph::components() const {
    std::vector<NodeId> label(static_cast<std::size_t>(n_), -1);
    for (NodeId root = 0; root < n_; ++root) {
        if (label[root] != -1) continue;
        std::vector<NodeId> stack{root};
        label[root] = root;
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            for (NodeId y : adj_[x])
                if (label[y] == -1) label[y] = root, stack.push_back(y);
        }
    }
    return label;
}

bool NetworkGraph::connected() const {
    auto label = components();
    return std::all_of(label.begin(), label.end(), [](NodeId l) { return l == 0; });
}

NetworkGraph generate_random_graph(int n, double edge_prob, Rng& rng) {
    if (n < 1) throw std::invalid_argument("graph needs at least one node");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge probability must be in [0, 1]");

    NetworkGraph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.uniform01() < edge_prob) g.add_edge(i, j);

    while (true) {
        auto label = g.components();
        std::vector<std::pair<NodeId, NodeId>> bridges;
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = i + 1; j < n; ++j)
                if (label[i] != label[j]) bridges.emplace_back(i, j);
        if (bridges.empty()) break;
        auto [i, j] = bridges[rng.below(bridges.size())];
        g.add_edge(i, j);
    }
    return g;
}

void write_edge_list(std::ostream& out, const NetworkGraph& g) {
    out << g.size() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

NetworkGraph read_edge_list(std::istream& in) {
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            line = trim(line.substr(0, line.find('#')));
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw ConfigError("edge list: missing node-count header");
    const auto n = parse_int(line);
    if (n < 1) throw ConfigError("edge list: node count must be >= 1");
    NetworkGraph g(static_cast<int>(n));
    while (next_line()) {
        std::vector<std::string> tok;
        for (auto& t : split(line, ' '))
            if (!t.empty()) tok.push_back(t);
        if (tok.size() != 2) throw ConfigError("edge list: expected 'i j', got '" + line + "'");
        const auto i = parse_int(tok[0]), j = parse_int(tok[1]);
        if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ConfigError("edge list: invalid edge '" + line + "'");
        g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
    return g;
}

RoutingTable::RoutingTable(int n, std::vector<int> hops) : n_(n), hops_(std::move(hops)) {
    if (n < 0 || hops_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("routing table size mismatch");
}

RoutingTable build_routing_table(const NetworkGraph& g) {
    const int n = g.size();
    std::vector<int> hops(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), RoutingTable::kUnreachable);
    for (NodeId src = 0; src < n; ++src) {
        int* row = hops.data() + static_cast<std::size_t>(src) * static_cast<std::size_t>(n);
        std::queue<NodeId> frontier;
        row[src] = 0;
        frontier.push(src);
        while (!frontier.empty()) {
            NodeId x = frontier.front();
            frontier.pop();
            for (NodeId y : g.neighbours(x))
                if (row[y] == RoutingTable::kUnreachable) {
                    row[y] = row[x] + 1;
                    frontier.push(y);
                }
        }
    }
    return RoutingTable(n, std::move(hops));
}

int count_heavy_nodes(std::span<const int> loads, double threshold) {
    return static_cast<int>(std::count_if(loads.begin(), loads.end(), [threshold](int l) { return l > threshold; }));
}

CostTable build_cost_table(const RoutingTable& rt, std::span<const int> loads, double threshold) {
    if (loads.size() != static_cast<std::size_t>(rt.size()))
        throw std::invalid_argument("cost table: load vector length does not match routing table");
    return {rt, count_heavy_nodes(loads, threshold)};
}

}  // namespace fuzzylb
