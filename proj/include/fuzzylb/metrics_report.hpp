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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylb/balancer_policies.hpp"
#include "fuzzylb/simulator.hpp"

namespace fuzzylb {

/// 100 * (baseline - fuzzy) / baseline. Throws std::invalid_argument if baseline <= 0.
double improvement_pct(double baseline, double fuzzy);

/// Arithmetic mean; throws std::invalid_argument on an empty list.
double mean_improvement(std::span<const double> pcts);

/**
 * Mean response times per policy and task count, with the fuzzy policy's
 * improvement over each baseline.
 *
 * Percentages keep full precision; rendering rounds to one decimal.
 */
class ComparisonTable {
public:
    /// responses[p][k] for policies[p] at task_counts[k].
    ComparisonTable(std::vector<int> task_counts, std::vector<PolicyKind> policies,
                    std::vector<std::vector<double>> responses);
    static ComparisonTable from_experiment(const ExperimentResult& r);

    const std::vector<int>& task_counts() const { return task_counts_; }
    const std::vector<PolicyKind>& policies() const { return policies_; }
    bool has(PolicyKind p) const;
    double response(PolicyKind p, std::size_t k) const;

    /// improvement_pct(baseline, p) per task count.
    std::vector<double> improvements(PolicyKind p, PolicyKind baseline) const;
    /// Fuzzy vs baseline, averaged over task counts.
    double mean_fuzzy_improvement(PolicyKind baseline) const;

private:
    std::size_t row(PolicyKind p) const;

    std::vector<int> task_counts_;
    std::vector<PolicyKind> policies_;
    std::vector<std::vector<double>> responses_;
};

enum class ReportFormat { Table, Csv };
std::string_view to_string(ReportFormat f);

/// CSV: header `task_count,policy,mean_response,improvement_vs_rr,improvement_vs_rand`,
/// rows by task_count then policy name. Improvement cells are the row's
/// policy against the given baseline, blank when that baseline is absent.
void emit_report(std::ostream& out, const ComparisonTable& table, ReportFormat format);

}  // namespace fuzzylb
