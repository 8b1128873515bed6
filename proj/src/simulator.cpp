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
#include "fuzzylb/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

#include "fuzzylb/key_value.hpp"

namespace fuzzylb {

void SimConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (nodes < 1) fail("nodes must be >= 1");
    if (task_count < 1) fail("tasks must be >= 1");
    if (!(arrival_rate > 0) || !std::isfinite(arrival_rate)) fail("arrival-rate must be positive");
    if (!(edge_prob >= 0 && edge_prob <= 1)) fail("edge-prob must be in [0, 1]");
    if (!(speed_min > 0 && speed_min <= speed_max) || !std::isfinite(speed_max))
        fail("speed range must satisfy 0 < min <= max");
    if (!(demand_min > 0 && demand_min <= demand_max) || !std::isfinite(demand_max))
        fail("demand range must satisfy 0 < min <= max");
    if (!(migration_delay_per_hop >= 0) || !std::isfinite(migration_delay_per_hop))
        fail("migration-delay must be >= 0");
    if (!(rebalance_interval >= 0) || !std::isfinite(rebalance_interval)) fail("rebalance-interval must be >= 0");
    if (graph && graph->size() != nodes) fail("graph node count does not match nodes");
    try {
        FuzzyController check(engine, nodes);
    } catch (const std::invalid_argument& e) {
        fail(std::string("engine: ") + e.what());
    }
}

namespace {

struct Event {
    double time;
    EventKind kind;
    int id;  // task id for arrivals, node id for completions, sequence for rebalances
    std::uint64_t seq;

    bool operator>(const Event& o) const {
        if (time != o.time) return time > o.time;
        if (kind != o.kind) return kind > o.kind;
        if (id != o.id) return id > o.id;
        return seq > o.seq;
    }
};

struct TaskState {
    double arrival = 0.0;
    double demand = 0.0;
    double completion = -1.0;
    NodeId destination = -1;  // where the pending arrival lands
};

class Simulation {
public:
    static constexpr int kPeriodic = -1;

    Simulation(const SimConfig& cfg, SimObserver* obs)
        : cfg_(cfg), obs_(obs), controller_(cfg.engine, cfg.nodes) {
        const int n = cfg.nodes;
        Rng graph_rng(cfg.seed, Stream::Graph);
        graph_ = cfg.graph ? *cfg.graph : generate_random_graph(n, cfg.edge_prob, graph_rng);
        routes_ = build_routing_table(graph_);

        Rng speed_rng(cfg.seed, Stream::Speeds);
        nodes_.resize(static_cast<std::size_t>(n));
        for (auto& node : nodes_) node.speed = speed_rng.uniform(cfg.speed_min, cfg.speed_max);

        Rng arrival_rng(cfg.seed, Stream::Arrivals);
        Rng demand_rng(cfg.seed, Stream::Demands);
        Rng placement_rng(cfg.seed, Stream::Placement);
        tasks_.resize(static_cast<std::size_t>(cfg.task_count));
        double t = 0.0;
        for (int i = 0; i < cfg.task_count; ++i) {
            if (i > 0) t += arrival_rng.exponential(cfg.arrival_rate);
            auto& task = tasks_[i];
            task.arrival = t;
            task.demand = demand_rng.uniform(cfg.demand_min, cfg.demand_max);
            // Drawn for every policy so that the placement stream stays aligned.
            const NodeId random_node = randomize_assign(placement_rng, n);
            task.destination = cfg.policy == PolicyKind::RoundRobin ? round_robin_assign(static_cast<std::uint64_t>(i), n)
                                                                    : random_node;
            push({t, EventKind::Arrival, i, 0});
        }
        if (cfg.policy == PolicyKind::Fuzzy && cfg.rebalance_interval > 0)
            push({cfg.rebalance_interval, EventKind::Rebalance, kPeriodic, 0});

        metrics_.completed_per_node.assign(static_cast<std::size_t>(n), 0);
        metrics_.seed = cfg.seed;
        metrics_.rng_algorithm = std::string(Rng::kAlgorithm);
    }

    RunMetrics run() {
        const std::uint64_t budget = 1'000'000ull + 10'000ull * static_cast<std::uint64_t>(cfg_.task_count);
        std::uint64_t processed = 0;
        while (!events_.empty()) {
            if (++processed > budget) throw std::runtime_error("simulation exceeded its event budget (migration livelock?)");
            const Event ev = events_.top();
            events_.pop();
            now_ = ev.time;
            switch (ev.kind) {
                case EventKind::Arrival: on_arrival(ev.id); break;
                case EventKind::Completion: on_completion(ev.id); break;
                case EventKind::Rebalance: on_rebalance(ev); break;
            }
            if (obs_) obs_->on_event(now_, ev.kind, nodes_);
        }
        if (completed_ != cfg_.task_count) throw std::logic_error("simulation ended with unfinished tasks");

        metrics_.response_times.resize(tasks_.size());
        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            metrics_.response_times[i] = tasks_[i].completion - tasks_[i].arrival;
            metrics_.makespan = std::max(metrics_.makespan, tasks_[i].completion);
        }
        metrics_.mean_response =
            std::accumulate(metrics_.response_times.begin(), metrics_.response_times.end(), 0.0) /
            static_cast<double>(metrics_.response_times.size());
        return metrics_;
    }

private:
    void push(Event ev) {
        ev.seq = seq_++;
        events_.push(ev);
    }

    void request_rebalance() {
        if (cfg_.policy != PolicyKind::Fuzzy || !cfg_.rebalance_on_events) return;
        // One event-coupled rebalance per timestamp, so zero-delay migrations
        // cannot cycle within an instant.
        if (rebalance_at_ == now_) return;
        rebalance_at_ = now_;
        push({now_, EventKind::Rebalance, static_cast<int>(rebalance_ids_++), 0});
    }

    void start_if_idle(NodeId n) {
        auto& node = nodes_[n];
        if (node.busy || node.queue.empty()) return;
        node.busy = true;
        node.queue.front().executing = true;
        const TaskId id = node.queue.front().id;
        if (obs_) obs_->on_task_start(id, n, now_);
        push({now_ + tasks_[id].demand / node.speed, EventKind::Completion, n, 0});
    }

    void on_arrival(TaskId id) {
        auto& task = tasks_[id];
        const NodeId n = task.destination;
        auto& node = nodes_[n];
        if (migrating_.count(id)) {
            migrating_.erase(id);
            --node.inbound;
        }
        node.queue.push_back({id, false});
        start_if_idle(n);
        request_rebalance();
    }

    void on_completion(NodeId n) {
        auto& node = nodes_[n];
        const TaskId id = node.queue.front().id;
        node.queue.erase(node.queue.begin());
        node.busy = false;
        tasks_[id].completion = now_;
        ++metrics_.completed_per_node[n];
        ++completed_;
        if (obs_) obs_->on_task_complete(id, n, now_);
        start_if_idle(n);
        request_rebalance();
    }

    void on_rebalance(const Event& ev) {
        if (ev.id == kPeriodic && completed_ < cfg_.task_count)
            push({now_ + cfg_.rebalance_interval, EventKind::Rebalance, kPeriodic, 0});
        rebalance();
    }

    void rebalance() {
        const auto n = nodes_.size();
        LoadVector loads(n);
        std::vector<std::vector<QueuedTask>> queues(n);
        for (std::size_t i = 0; i < n; ++i) {
            loads[i] = static_cast<int>(nodes_[i].queue.size()) + nodes_[i].inbound;
            queues[i] = nodes_[i].queue;
        }
        const CostTable cost = build_cost_table(routes_, loads, controller_.breakpoints().s);
        std::vector<NodeStatus> statuses(n);
        for (std::size_t i = 0; i < n; ++i)
            statuses[i] = fuzzy_transfer_policy(loads[i], cost.heavy_count, controller_);

        for (const auto& d : plan_migrations(statuses, cost, queues)) {
            auto& q = nodes_[d.source].queue;
            auto it = std::find_if(q.begin(), q.end(), [&](const QueuedTask& t) { return t.id == d.task; });
            if (it == q.end() || it->executing) throw std::logic_error("migration of a task that is not waiting");
            q.erase(it);
            const double ready = now_ + cost.cost(d.source, d.target) * cfg_.migration_delay_per_hop;
            tasks_[d.task].destination = d.target;
            ++nodes_[d.target].inbound;
            migrating_.insert(d.task);
            ++metrics_.migrations;
            if (obs_) obs_->on_migration(d, now_, ready);
            push({ready, EventKind::Arrival, d.task, 0});
        }
    }

    const SimConfig& cfg_;
    SimObserver* obs_;
    FuzzyController controller_;
    NetworkGraph graph_;
    RoutingTable routes_;
    std::vector<NodeView> nodes_;
    std::vector<TaskState> tasks_;
    std::set<TaskId> migrating_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    RunMetrics metrics_;
    double now_ = 0.0;
    double rebalance_at_ = -1.0;
    std::uint64_t seq_ = 0;
    std::uint64_t rebalance_ids_ = 0;
    int completed_ = 0;
};

}  // namespace

RunMetrics run_simulation(const SimConfig& cfg, SimObserver* observer) {
    cfg.validate();
    return Simulation(cfg, observer).run();
}

double ExperimentResult::mean(PolicyKind p, int task_count) const {
    const auto pi = std::find(policies.begin(), policies.end(), p);
    const auto ki = std::find(task_counts.begin(), task_counts.end(), task_count);
    if (pi == policies.end() || ki == task_counts.end()) throw std::out_of_range("no such experiment cell");
    return means[static_cast<std::size_t>(pi - policies.begin())][static_cast<std::size_t>(ki - task_counts.begin())];
}

ExperimentResult run_experiment(const SimConfig& tmpl, const std::vector<int>& task_counts,
                                const std::vector<std::uint64_t>& seeds, const std::vector<PolicyKind>& policies,
                                unsigned threads) {
    if (task_counts.empty() || seeds.empty() || policies.empty())
        throw std::invalid_argument("experiment lists must be non-empty");
    tmpl.validate();

    ExperimentResult res{task_counts, policies, seeds,
                         std::vector<std::vector<double>>(policies.size(), std::vector<double>(task_counts.size()))};
    const std::size_t cells = policies.size() * task_counts.size();

    auto run_cell = [&](std::size_t c) {
        const std::size_t p = c / task_counts.size(), k = c % task_counts.size();
        SimConfig cfg = tmpl;
        cfg.policy = policies[p];
        cfg.task_count = task_counts[k];
        double sum = 0.0;
        for (auto seed : seeds) {
            cfg.seed = seed;
            sum += run_simulation(cfg).mean_response;
        }
        res.means[p][k] = sum / static_cast<double>(seeds.size());
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells)));
    if (threads == 1) {
        for (std::size_t c = 0; c < cells; ++c) run_cell(c);
        return res;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t c; (c = next++) < cells;) {
                try {
                    run_cell(c);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    pool.clear();
    if (error) std::rethrow_exception(error);
    return res;
}

}  // namespace fuzzylb
