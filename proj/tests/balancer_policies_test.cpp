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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fuzzylb/balancer_policies.hpp"
#include "oracles.hpp"

namespace fuzzylb {
namespace {

constexpr auto R = NodeStatus::Receiver;
constexpr auto S = NodeStatus::Sender;
constexpr auto N = NodeStatus::Neutral;

CostTable table_from(int n, const std::vector<std::pair<int, int>>& edges) {
    NetworkGraph g(n);
    for (auto [i, j] : edges) g.add_edge(i, j);
    return build_cost_table(build_routing_table(g), std::vector<int>(static_cast<std::size_t>(n), 0), 1);
}

std::vector<QueuedTask> queue_of(std::initializer_list<TaskId> ids, bool head_executing = true) {
    std::vector<QueuedTask> q;
    for (TaskId id : ids) q.push_back({id, head_executing && q.empty()});
    return q;
}

TEST(PolicyKind, NamesRoundTrip) {
    for (auto k : {PolicyKind::Fuzzy, PolicyKind::RoundRobin, PolicyKind::Randomize})
        EXPECT_EQ(parse_policy(to_string(k)), k);
    EXPECT_EQ(parse_policy("rr"), PolicyKind::RoundRobin);
    EXPECT_EQ(parse_policy("random"), PolicyKind::Randomize);
    EXPECT_FALSE(parse_policy("greedy").has_value());
}

TEST(Transfer, Examples) {
    const FuzzyController ctl(EngineConfig{}, 5);
    const auto& bp = ctl.breakpoints();
    EXPECT_EQ(fuzzy_transfer_policy(0, 0, ctl), R);
    EXPECT_EQ(fuzzy_transfer_policy(bp.w, 0, ctl), S);
    EXPECT_EQ(fuzzy_transfer_policy(bp.s, 5, ctl), R);
}

TEST(Transfer, TotalAndDeterministic) {
    const FuzzyController ctl(EngineConfig{}, 5);
    for (int load = 0; load <= 40; ++load)
        for (int heavy = 0; heavy <= 5; ++heavy) {
            const auto a = fuzzy_transfer_policy(load * 0.25, heavy, ctl);
            EXPECT_EQ(a, fuzzy_transfer_policy(load * 0.25, heavy, ctl));
        }
}

TEST(Location, NearestReceiverWins) {
    // Sender 0; B=1 at cost 1, C=2 at cost 2.
    const auto ct = table_from(3, {{0, 1}, {1, 2}});
    const std::vector<NodeStatus> st{S, R, R};
    EXPECT_EQ(location_policy(0, st, ct), 1);
}

TEST(Location, NoReceiversGivesEmpty) {
    const auto ct = table_from(3, {{0, 1}, {1, 2}});
    EXPECT_FALSE(location_policy(0, std::vector<NodeStatus>{S, N, S}, ct).has_value());
}

TEST(Location, TieBrokenByLowestId) {
    const auto ct = table_from(4, {{0, 3}, {0, 2}, {0, 1}});
    EXPECT_EQ(location_policy(0, std::vector<NodeStatus>{S, N, R, R}, ct), 2);
}

TEST(Location, HonoursExclusionAndSkipsUnreachable) {
    const auto ct = table_from(4, {{0, 1}, {1, 2}});
    const std::vector<NodeStatus> st{S, R, R, R};
    EXPECT_EQ(location_policy(0, st, ct, {1}), 2);
    EXPECT_FALSE(location_policy(0, st, ct, {1, 2}).has_value());
}

TEST(Location, MatchesBruteForceScan) {
    std::mt19937 gen(31);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 7;
        const auto edges = oracle::random_edges(n, 0.4, gen);
        const auto ct = table_from(n, edges);
        const auto hops = oracle::floyd_warshall(n, edges);
        std::vector<NodeStatus> st(static_cast<std::size_t>(n));
        for (auto& s : st) s = static_cast<NodeStatus>(gen() % 3);
        std::set<NodeId> excluded;
        for (int j = 0; j < n; ++j)
            if (gen() % 5 == 0) excluded.insert(j);
        const NodeId sender = static_cast<NodeId>(gen() % static_cast<unsigned>(n));

        int best = oracle::kInf, best_id = -1;
        for (int j = 0; j < n; ++j) {
            if (j == sender || st[j] != R || excluded.count(j)) continue;
            const int c = hops[static_cast<std::size_t>(sender * n + j)];
            if (c < best) best = c, best_id = j;
        }
        const auto got = location_policy(sender, st, ct, excluded);
        if (best_id < 0) {
            ASSERT_FALSE(got.has_value()) << trial;
        } else {
            ASSERT_EQ(got, best_id) << trial;
        }
    }
}

TEST(Selection, Examples) {
    EXPECT_EQ(selection_policy(queue_of({1, 2, 3})), 3);
    EXPECT_FALSE(selection_policy(queue_of({1})).has_value());
    EXPECT_FALSE(selection_policy(std::vector<QueuedTask>{}).has_value());
    EXPECT_EQ(selection_policy(queue_of({4, 5}, false)), 5);
}

TEST(Plan, OneSenderOneReceiver) {
    const auto ct = table_from(2, {{0, 1}});
    const std::vector<std::vector<QueuedTask>> q{queue_of({10, 11}), {}};
    const auto d = plan_migrations(std::vector<NodeStatus>{S, R}, ct, q);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0], (MigrationDecision{0, 1, 11}));
}

TEST(Plan, SenderWithNothingTransferable) {
    const auto ct = table_from(3, {{0, 1}, {1, 2}});
    const std::vector<std::vector<QueuedTask>> q{{}, queue_of({1}), {}};
    EXPECT_TRUE(plan_migrations(std::vector<NodeStatus>{S, S, R}, ct, q).empty());
}

TEST(Plan, TwoSendersOneReceiver) {
    const auto ct = table_from(3, {{0, 1}, {1, 2}, {0, 2}});
    const std::vector<std::vector<QueuedTask>> q{queue_of({1, 2}), queue_of({3, 4}), {}};
    const auto d = plan_migrations(std::vector<NodeStatus>{S, S, R}, ct, q);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].source, 0);
    EXPECT_EQ(d[0].target, 2);
}

TEST(Plan, ReceiverPoolShrinks) {
    // Both senders are nearest to 2; the second falls back to 3.
    const auto ct = table_from(4, {{0, 2}, {1, 2}, {2, 3}});
    const std::vector<std::vector<QueuedTask>> q{queue_of({1, 2}), queue_of({3, 4}), {}, {}};
    const auto d = plan_migrations(std::vector<NodeStatus>{S, S, R, R}, ct, q);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], (MigrationDecision{0, 2, 2}));
    EXPECT_EQ(d[1], (MigrationDecision{1, 3, 4}));
}

TEST(Plan, InconsistentSizesRejected) {
    const auto ct = table_from(2, {{0, 1}});
    const std::vector<std::vector<QueuedTask>> q{{}};
    EXPECT_THROW(plan_migrations(std::vector<NodeStatus>{S, R}, ct, q), std::invalid_argument);
}

TEST(PlanProperty, DistinctSourcesTargetsAndWaitingTasksOnly) {
    std::mt19937 gen(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 9;
        const auto ct = table_from(n, oracle::random_edges(n, 0.5, gen));
        std::vector<NodeStatus> st(static_cast<std::size_t>(n));
        std::vector<std::vector<QueuedTask>> q(static_cast<std::size_t>(n));
        TaskId next = 0;
        for (int i = 0; i < n; ++i) {
            st[i] = static_cast<NodeStatus>(gen() % 3);
            const int len = static_cast<int>(gen() % 4);
            for (int k = 0; k < len; ++k) q[i].push_back({next++, k == 0 && gen() % 2 == 0});
        }
        std::set<NodeId> sources, targets;
        for (const auto& d : plan_migrations(st, ct, q)) {
            ASSERT_NE(d.source, d.target);
            ASSERT_EQ(st[d.source], S);
            ASSERT_EQ(st[d.target], R);
            ASSERT_TRUE(sources.insert(d.source).second);
            ASSERT_TRUE(targets.insert(d.target).second);
            const auto& src = q[d.source];
            auto it = std::find_if(src.begin(), src.end(), [&](const QueuedTask& t) { return t.id == d.task; });
            ASSERT_NE(it, src.end());
            ASSERT_FALSE(it->executing);
        }
    }
}

TEST(RoundRobin, Examples) {
    EXPECT_EQ(round_robin_assign(0, 3), 0);
    EXPECT_EQ(round_robin_assign(3, 3), 0);
    EXPECT_EQ(round_robin_assign(7, 5), 2);
    EXPECT_THROW(round_robin_assign(0, 0), std::invalid_argument);
}

TEST(Randomize, SingleNodeAlwaysZero) {
    Rng rng(5, Stream::Placement);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(randomize_assign(rng, 1), 0);
}

TEST(Randomize, ReplayEquality) {
    Rng a(9, Stream::Placement), b(9, Stream::Placement);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(randomize_assign(a, 7), randomize_assign(b, 7));
}

TEST(Randomize, FrequenciesWithinThreeSigma) {
    constexpr int draws = 100'000, n = 5;
    Rng rng(1, Stream::Placement);
    std::array<int, n> counts{};
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(randomize_assign(rng, n))];
    const double p = 1.0 / n;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (int c : counts) EXPECT_NEAR(c, draws * p, 3 * sigma);
}

}  // namespace
}  // namespace fuzzylb
