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

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylb/node_status.hpp"

namespace fuzzylb {

/// Raised by defuzzification when every output activation is zero.
class NoRuleFired : public std::runtime_error {
public:
    NoRuleFired() : std::runtime_error("no rule fired") {}
};

/**
 * Piecewise-linear membership function.
 *
 * Every shape is stored as a trapezoid (a, b, c, d): zero up to a, rising to
 * one at b, flat to c, falling to zero at d. Shoulders use infinite outer
 * knots. A zero-width ramp is a step at the knot, left-continuous.
 */
class MembershipFunction {
public:
    enum class Kind { LeftShoulder, Trapezoid, Triangle, RightShoulder };

    /// 1 below a, linear down to 0 at b.
    static MembershipFunction left_shoulder(double a, double b);
    /// 0 below a, linear up to 1 at b.
    static MembershipFunction right_shoulder(double a, double b);
    static MembershipFunction triangle(double a, double peak, double c);
    static MembershipFunction trapezoid(double a, double b, double c, double d);

    double operator()(double x) const;

    Kind kind() const { return kind_; }
    /// The 2-4 user-supplied knots, in order.
    std::vector<double> knots() const;
    /// Internal (a, b, c, d) form; shoulders carry +/-infinity.
    const std::array<double, 4>& corners() const { return corners_; }

private:
    MembershipFunction(Kind kind, std::array<double, 4> corners);

    Kind kind_;
    std::array<double, 4> corners_;
};

/// Ordered load-index thresholds; s doubles as the heavy-node threshold.
/// Defaults are sized for a handful of queued tasks per node.
struct Breakpoints {
    double p = 0.5, q = 1, r = 1.5, s = 2, t = 2.5, u = 3, v = 3.5, w = 5;

    /// Throws std::invalid_argument unless 0 <= p <= q <= ... <= w.
    void validate() const;
    std::array<double, 8> as_array() const { return {p, q, r, s, t, u, v, w}; }
    static Breakpoints from_array(const std::array<double, 8>& a);
    Breakpoints scaled(double factor) const;
};

enum class LoadTerm { VeryLight, Light, Moderate, Heavy, VeryHeavy };
enum class CountTerm { Less, MoreEqual };

inline constexpr std::size_t kLoadTermCount = 5;
inline constexpr std::size_t kCountTermCount = 2;

std::string_view to_string(LoadTerm t);
std::string_view to_string(CountTerm t);

/// Five load-index membership functions in LoadTerm order.
struct LoadPartition {
    std::array<MembershipFunction, kLoadTermCount> sets;

    /// very-light = LS(p,q), light = trap(p,q,r,s), moderate = tri(r,s,t),
    /// heavy = trap(s,t,u,v), very-heavy = RS(u,v).
    static LoadPartition canonical(const Breakpoints& bp);
};

/// Fuzzy partition of the heavy-node count N over 0..n.
struct HeavyCountPartition {
    double p_n = 1, q_n = 2, r_n = 3;
    int n = 5;

    /// p_n = ceil(0.2 n), q_n = ceil(0.4 n), r_n = ceil(0.6 n).
    static HeavyCountPartition default_for(int n);
    void validate() const;
    MembershipFunction less() const { return MembershipFunction::left_shoulder(p_n, q_n); }
    MembershipFunction more_equal() const { return MembershipFunction::right_shoulder(q_n, r_n); }
};

using LoadDegrees = std::array<double, kLoadTermCount>;
using CountDegrees = std::array<double, kCountTermCount>;

/// Values above bp.w are clamped to w first.
LoadDegrees fuzzify_load(double load, const Breakpoints& bp);
CountDegrees fuzzify_heavy_count(double heavy_count, const HeavyCountPartition& hp);

/// Antecedents left empty match anything (degree 1).
struct FuzzyRule {
    std::optional<LoadTerm> load_term;
    std::optional<CountTerm> count_term;
    NodeStatus consequent = NodeStatus::Receiver;

    bool operator==(const FuzzyRule&) const = default;
};

class RuleBase {
public:
    RuleBase() = default;
    /// Throws std::invalid_argument if any consequent is Neutral.
    explicit RuleBase(std::vector<FuzzyRule> rules);

    /// The eight status rules of the sender-initiated controller.
    static RuleBase standard();

    const std::vector<FuzzyRule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }

private:
    std::vector<FuzzyRule> rules_;
};

struct Activations {
    double receiver = 0;
    double sender = 0;
};

/// Mamdani min/max. Throws std::invalid_argument on an empty rule base.
Activations infer(const LoadDegrees& load, const CountDegrees& count, const RuleBase& rules);

/// Output sets over the universe [0, 1].
struct OutputPartition {
    MembershipFunction receiver = MembershipFunction::triangle(0.0, 0.0, 0.5);
    MembershipFunction neutral = MembershipFunction::triangle(0.25, 0.5, 0.75);
    MembershipFunction sender = MembershipFunction::triangle(0.5, 1.0, 1.0);

    void validate() const;
};

/// Exact centroid of max(min(a_r, receiver), min(a_s, sender)) on [0, 1].
/// The neutral set is present but never activated by a rule.
/// Throws NoRuleFired when both activations are zero.
double defuzzify_centroid(const Activations& act, const OutputPartition& out);

NodeStatus classify_status(double centroid, double band = 0.05);

struct InferenceResult {
    LoadDegrees load_degrees{};
    CountDegrees count_degrees{};
    Activations activations;
    /// Empty when no rule fired.
    std::optional<double> centroid;
    NodeStatus status = NodeStatus::Neutral;
};

/// Everything the transfer policy needs; immutable once built.
struct EngineConfig {
    Breakpoints breakpoints;
    /// Empty means HeavyCountPartition::default_for(node count).
    std::optional<HeavyCountPartition> heavy_partition;
    RuleBase rules = RuleBase::standard();
    OutputPartition output;
    double band = 0.05;

    void validate() const;
};

class FuzzyController {
public:
    FuzzyController(EngineConfig cfg, int node_count);

    InferenceResult evaluate(double load, double heavy_count) const;
    NodeStatus status(double load, double heavy_count) const { return evaluate(load, heavy_count).status; }

    const Breakpoints& breakpoints() const { return cfg_.breakpoints; }
    const HeavyCountPartition& heavy_partition() const { return heavy_; }
    const EngineConfig& config() const { return cfg_; }

private:
    EngineConfig cfg_;
    HeavyCountPartition heavy_;
};

// Plain-text key=value configuration. Recognised keys:
//   breakpoints = p,q,r,s,t,u,v,w
//   heavy-partition = pN,qN,rN
//   band = 0.05
//   output-receiver | output-neutral | output-sender = a,b,c[,d]
//   rule = <load-term|any> <count-term|any> -> <sender|receiver>
// The first `rule` line replaces the compiled-in rule base; later ones append.
// '#' starts a comment.

std::optional<LoadTerm> parse_load_term(std::string_view s);
std::optional<CountTerm> parse_count_term(std::string_view s);
FuzzyRule parse_rule(std::string_view text);
std::string format_rule(const FuzzyRule& r);

/// Applies one key to cfg. Returns false for keys the engine does not own.
/// `rules_replaced` tracks whether the defaults have been dropped yet.
bool apply_engine_key(EngineConfig& cfg, std::string_view key, std::string_view value, bool& rules_replaced);

EngineConfig load_engine_config(std::istream& in);
void write_engine_config(std::ostream& out, const EngineConfig& cfg);

}  // namespace fuzzylb
