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
#include "fuzzylb/metrics_report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fuzzylb {

double improvement_pct(double baseline, double fuzzy) {
    if (!(baseline > 0)) throw std::invalid_argument("improvement_pct: baseline must be positive");
    return 100.0 * (baseline - fuzzy) / baseline;
}

double mean_improvement(std::span<const double> pcts) {
    if (pcts.empty()) throw std::invalid_argument("mean_improvement: empty list");
    return std::accumulate(pcts.begin(), pcts.end(), 0.0) / static_cast<double>(pcts.size());
}

ComparisonTable::ComparisonTable(std::vector<int> task_counts, std::vector<PolicyKind> policies,
                                 std::vector<std::vector<double>> responses)
    : task_counts_(std::move(task_counts)), policies_(std::move(policies)), responses_(std::move(responses)) {
    if (responses_.size() != policies_.size()) throw std::invalid_argument("comparison table: one row per policy");
    for (const auto& r : responses_)
        if (r.size() != task_counts_.size()) throw std::invalid_argument("comparison table: one column per task count");
    for (std::size_t i = 0; i < policies_.size(); ++i)
        for (std::size_t j = i + 1; j < policies_.size(); ++j)
            if (policies_[i] == policies_[j]) throw std::invalid_argument("comparison table: duplicate policy");
}

ComparisonTable ComparisonTable::from_experiment(const ExperimentResult& r) {
    return ComparisonTable(r.task_counts, r.policies, r.means);
}

bool ComparisonTable::has(PolicyKind p) const {
    return std::find(policies_.begin(), policies_.end(), p) != policies_.end();
}

std::size_t ComparisonTable::row(PolicyKind p) const {
    auto it = std::find(policies_.begin(), policies_.end(), p);
    if (it == policies_.end()) throw std::out_of_range("comparison table has no row for " + std::string(to_string(p)));
    return static_cast<std::size_t>(it - policies_.begin());
}

double ComparisonTable::response(PolicyKind p, std::size_t k) const { return responses_.at(row(p)).at(k); }

std::vector<double> ComparisonTable::improvements(PolicyKind p, PolicyKind baseline) const {
    std::vector<double> out;
    for (std::size_t k = 0; k < task_counts_.size(); ++k) out.push_back(improvement_pct(response(baseline, k), response(p, k)));
    return out;
}

double ComparisonTable::mean_fuzzy_improvement(PolicyKind baseline) const {
    return mean_improvement(improvements(PolicyKind::Fuzzy, baseline));
}

std::string_view to_string(ReportFormat f) { return f == ReportFormat::Csv ? "csv" : "table"; }

namespace {

std::string fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

std::string pad(std::string s, std::size_t width, bool left = false) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

void emit_csv(std::ostream& out, const ComparisonTable& t) {
    out << "task_count,policy,mean_response,improvement_vs_rr,improvement_vs_rand\n";
    std::vector<PolicyKind> order = t.policies();
    std::sort(order.begin(), order.end(), [](PolicyKind a, PolicyKind b) { return to_string(a) < to_string(b); });
    const bool rr = t.has(PolicyKind::RoundRobin), rand = t.has(PolicyKind::Randomize);
    for (std::size_t k = 0; k < t.task_counts().size(); ++k) {
        for (PolicyKind p : order) {
            const double resp = t.response(p, k);
            out << t.task_counts()[k] << ',' << to_string(p) << ',' << fixed(resp, 6) << ',';
            if (rr) out << fixed(improvement_pct(t.response(PolicyKind::RoundRobin, k), resp), 1);
            out << ',';
            if (rand) out << fixed(improvement_pct(t.response(PolicyKind::Randomize, k), resp), 1);
            out << '\n';
        }
    }
}

void emit_text(std::ostream& out, const ComparisonTable& t) {
    constexpr std::size_t kLabel = 14, kCell = 10;
    std::vector<PolicyKind> order;
    for (PolicyKind p : {PolicyKind::Randomize, PolicyKind::RoundRobin, PolicyKind::Fuzzy})
        if (t.has(p)) order.push_back(p);

    out << "Mean response time by number of tasks\n";
    out << pad("policy", kLabel, true);
    for (int tc : t.task_counts()) out << pad(std::to_string(tc), kCell);
    out << '\n';
    for (PolicyKind p : order) {
        out << pad(std::string(to_string(p)), kLabel, true);
        for (std::size_t k = 0; k < t.task_counts().size(); ++k) out << pad(fixed(t.response(p, k), 4), kCell);
        out << '\n';
    }

    std::vector<PolicyKind> baselines;
    if (t.has(PolicyKind::Fuzzy))
        for (PolicyKind b : {PolicyKind::RoundRobin, PolicyKind::Randomize})
            if (t.has(b)) baselines.push_back(b);
    if (baselines.empty()) return;

    out << "\nImprovement of fuzzy over baseline (%)\n";
    out << pad("tasks", kLabel, true);
    for (PolicyKind b : baselines) out << pad("vs " + std::string(to_string(b)), kCell + 6);
    out << '\n';
    for (std::size_t k = 0; k < t.task_counts().size(); ++k) {
        out << pad(std::to_string(t.task_counts()[k]), kLabel, true);
        for (PolicyKind b : baselines)
            out << pad(fixed(improvement_pct(t.response(b, k), t.response(PolicyKind::Fuzzy, k)), 1), kCell + 6);
        out << '\n';
    }

    out << "\nMean improvement of fuzzy (%)\n";
    for (PolicyKind b : baselines)
        out << pad("vs " + std::string(to_string(b)), kLabel + 2, true) << fixed(t.mean_fuzzy_improvement(b), 2) << '\n';
}

}  // namespace

void emit_report(std::ostream& out, const ComparisonTable& table, ReportFormat format) {
    if (format == ReportFormat::Csv) emit_csv(out, table);
    else emit_text(out, table);
}

}  // namespace fuzzylb
