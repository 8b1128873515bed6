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
#include "fuzzylb/fuzzy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "fuzzylb/key_value.hpp"

namespace fuzzylb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ordered(std::initializer_list<double> knots, const char* what) {
    double prev = -kInf;
    for (double k : knots) {
        if (std::isnan(k)) throw std::invalid_argument(std::string(what) + ": NaN knot");
        if (k < prev) throw std::invalid_argument(std::string(what) + ": knots must be non-decreasing");
        prev = k;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// MembershipFunction

MembershipFunction::MembershipFunction(Kind kind, std::array<double, 4> corners)
    : kind_(kind), corners_(corners) {}

MembershipFunction MembershipFunction::left_shoulder(double a, double b) {
    require_ordered({a, b}, "left shoulder");
    return {Kind::LeftShoulder, {-kInf, -kInf, a, b}};
}

MembershipFunction MembershipFunction::right_shoulder(double a, double b) {
    require_ordered({a, b}, "right shoulder");
    return {Kind::RightShoulder, {a, b, kInf, kInf}};
}

MembershipFunction MembershipFunction::triangle(double a, double peak, double c) {
    require_ordered({a, peak, c}, "triangle");
    return {Kind::Triangle, {a, peak, peak, c}};
}

MembershipFunction MembershipFunction::trapezoid(double a, double b, double c, double d) {
    require_ordered({a, b, c, d}, "trapezoid");
    return {Kind::Trapezoid, {a, b, c, d}};
}

std::vector<double> MembershipFunction::knots() const {
    const auto& [a, b, c, d] = corners_;
    switch (kind_) {
        case Kind::LeftShoulder: return {c, d};
        case Kind::RightShoulder: return {a, b};
        case Kind::Triangle: return {a, b, d};
        case Kind::Trapezoid: return {a, b, c, d};
    }
    return {};
}

double MembershipFunction::operator()(double x) const {
    const auto& [a, b, c, d] = corners_;
    // Checking x <= a first makes a zero-width rise take its left limit (0).
    if (x <= a) return 0.0;
    if (x < b) return (x - a) / (b - a);
    if (x <= c) return 1.0;
    if (x < d) return (d - x) / (d - c);
    return 0.0;
}

// ---------------------------------------------------------------------------
// Partitions

void Breakpoints::validate() const {
    if (p < 0) throw std::invalid_argument("breakpoints: p must be >= 0");
    require_ordered({p, q, r, s, t, u, v, w}, "breakpoints");
    for (double x : as_array())
        if (!std::isfinite(x)) throw std::invalid_argument("breakpoints: non-finite value");
}

Breakpoints Breakpoints::from_array(const std::array<double, 8>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
}

Breakpoints Breakpoints::scaled(double factor) const {
    auto a = as_array();
    for (auto& x : a) x *= factor;
    return from_array(a);
}

std::string_view to_string(LoadTerm t) {
    switch (t) {
        case LoadTerm::VeryLight: return "very-light";
        case LoadTerm::Light: return "light";
        case LoadTerm::Moderate: return "moderate";
        case LoadTerm::Heavy: return "heavy";
        case LoadTerm::VeryHeavy: return "very-heavy";
    }
    return "?";
}

std::string_view to_string(CountTerm t) {
    return t == CountTerm::Less ? "less" : "moreequal";
}

LoadPartition LoadPartition::canonical(const Breakpoints& bp) {
    bp.validate();
    return {{
        MembershipFunction::left_shoulder(bp.p, bp.q),
        MembershipFunction::trapezoid(bp.p, bp.q, bp.r, bp.s),
        MembershipFunction::triangle(bp.r, bp.s, bp.t),
        MembershipFunction::trapezoid(bp.s, bp.t, bp.u, bp.v),
        MembershipFunction::right_shoulder(bp.u, bp.v),
    }};
}

HeavyCountPartition HeavyCountPartition::default_for(int n) {
    if (n < 1) throw std::invalid_argument("heavy partition: node count must be >= 1");
    auto frac = [n](double f) { return std::ceil(f * n - 1e-9); };
    return {frac(0.2), frac(0.4), frac(0.6), n};
}

void HeavyCountPartition::validate() const {
    if (n < 1) throw std::invalid_argument("heavy partition: node count must be >= 1");
    if (!(p_n >= 0) || !(r_n <= n)) throw std::invalid_argument("heavy partition: knots must lie in [0, n]");
    require_ordered({p_n, q_n, r_n}, "heavy partition");
}

LoadDegrees fuzzify_load(double load, const Breakpoints& bp) {
    if (!(load >= 0) || !std::isfinite(load)) throw std::invalid_argument("load must be finite and >= 0");
    const double x = std::min(load, bp.w);
    const auto part = LoadPartition::canonical(bp);
    LoadDegrees out{};
    for (std::size_t i = 0; i < kLoadTermCount; ++i) out[i] = part.sets[i](x);
    return out;
}

CountDegrees fuzzify_heavy_count(double heavy_count, const HeavyCountPartition& hp) {
    return {hp.less()(heavy_count), hp.more_equal()(heavy_count)};
}

// ---------------------------------------------------------------------------
// Rules and inference

RuleBase::RuleBase(std::vector<FuzzyRule> rules) : rules_(std::move(rules)) {
    for (const auto& r : rules_)
        if (r.consequent == NodeStatus::Neutral)
            throw std::invalid_argument("rule consequent must be Sender or Receiver");
}

RuleBase RuleBase::standard() {
    using L = LoadTerm;
    using C = CountTerm;
    constexpr auto S = NodeStatus::Sender;
    constexpr auto R = NodeStatus::Receiver;
    return RuleBase({
        {L::VeryLight, std::nullopt, R},
        {L::VeryHeavy, std::nullopt, S},
        {L::Heavy, C::MoreEqual, R},
        {L::Heavy, C::Less, S},
        {L::Light, C::Less, S},
        {L::Light, C::MoreEqual, R},
        {L::Moderate, C::MoreEqual, R},
        {L::Moderate, C::Less, S},
    });
}

Activations infer(const LoadDegrees& load, const CountDegrees& count, const RuleBase& rules) {
    if (rules.empty()) throw std::invalid_argument("empty rule base");
    Activations act;
    for (const auto& rule : rules.rules()) {
        double strength = 1.0;
        if (rule.load_term) strength = std::min(strength, load[static_cast<std::size_t>(*rule.load_term)]);
        if (rule.count_term) strength = std::min(strength, count[static_cast<std::size_t>(*rule.count_term)]);
        double& slot = rule.consequent == NodeStatus::Sender ? act.sender : act.receiver;
        slot = std::max(slot, strength);
    }
    return act;
}

// ---------------------------------------------------------------------------
// Defuzzification

namespace {

struct ClippedSet {
    const MembershipFunction* mf;
    double level;
    double operator()(double x) const { return std::min(level, (*mf)(x)); }
};

struct Line {
    double y0, y1;  // values at the interval ends
};

// Each clipped set is linear on the open interval; sampling inside avoids
// picking up step values at the ends.
Line line_on(const ClippedSet& f, double x0, double x1) {
    const double h = x1 - x0;
    const double m1 = f(x0 + h / 3.0), m2 = f(x0 + 2.0 * h / 3.0);
    const double slope3 = m2 - m1;  // change over h/3
    return {m1 - slope3, m2 + slope3};
}

void add_ramp_points(std::vector<double>& pts, const MembershipFunction& mf, double level) {
    const auto& [a, b, c, d] = mf.corners();
    for (double k : {a, b, c, d}) pts.push_back(k);
    if (std::isfinite(a) && std::isfinite(b) && b > a) pts.push_back(a + level * (b - a));
    if (std::isfinite(c) && std::isfinite(d) && d > c) pts.push_back(d - level * (d - c));
}

}  // namespace

double defuzzify_centroid(const Activations& act, const OutputPartition& out) {
    if (!(act.receiver > 0) && !(act.sender > 0)) throw NoRuleFired();
    const std::array<ClippedSet, 3> sets{{
        {&out.receiver, std::clamp(act.receiver, 0.0, 1.0)},
        {&out.neutral, 0.0},
        {&out.sender, std::clamp(act.sender, 0.0, 1.0)},
    }};

    std::vector<double> pts{0.0, 1.0};
    for (const auto& s : sets) add_ramp_points(pts, *s.mf, s.level);
    std::erase_if(pts, [](double x) { return !(x >= 0.0 && x <= 1.0); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    double area = 0.0, moment = 0.0;
    auto integrate = [&](double x0, double x1, double y0, double y1) {
        const double h = x1 - x0;
        area += 0.5 * h * (y0 + y1);
        moment += h / 6.0 * (x0 * (2.0 * y0 + y1) + x1 * (y0 + 2.0 * y1));
    };

    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double x0 = pts[k], x1 = pts[k + 1];
        std::array<Line, 3> lines;
        for (std::size_t i = 0; i < sets.size(); ++i) lines[i] = line_on(sets[i], x0, x1);

        // Split where any two lines cross so the upper envelope is linear per piece.
        std::vector<double> cuts{0.0, 1.0};
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const double d0 = lines[i].y0 - lines[j].y0, d1 = lines[i].y1 - lines[j].y1;
                if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) cuts.push_back(d0 / (d0 - d1));
            }
        std::sort(cuts.begin(), cuts.end());

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double f0 = cuts[c], f1 = cuts[c + 1];
            if (f1 <= f0) continue;
            const double fm = 0.5 * (f0 + f1);
            const Line* top = &lines[0];
            double best = -1.0;
            for (const auto& ln : lines) {
                const double ym = ln.y0 + fm * (ln.y1 - ln.y0);
                if (ym > best) best = ym, top = &ln;
            }
            const double y0 = top->y0 + f0 * (top->y1 - top->y0);
            const double y1 = top->y0 + f1 * (top->y1 - top->y0);
            integrate(x0 + f0 * (x1 - x0), x0 + f1 * (x1 - x0), y0, y1);
        }
    }
    if (!(area > 0)) throw NoRuleFired();
    return std::clamp(moment / area, 0.0, 1.0);
}

NodeStatus classify_status(double centroid, double band) {
    if (centroid < 0.5 - band) return NodeStatus::Receiver;
    if (centroid > 0.5 + band) return NodeStatus::Sender;
    return NodeStatus::Neutral;
}

void OutputPartition::validate() const {
    auto peak = [](const MembershipFunction& mf) {
        const auto& c = mf.corners();
        return 0.5 * (c[1] + c[2]);
    };
    if (!(peak(receiver) < peak(neutral) && peak(neutral) < peak(sender)))
        throw std::invalid_argument("output partition: sets must be ordered receiver < neutral < sender");

    std::vector<double> pts{0.0, 1.0};
    for (const auto* mf : {&receiver, &neutral, &sender}) add_ramp_points(pts, *mf, 1.0);
    std::erase_if(pts, [](double x) { return !(x >= 0.0 && x <= 1.0); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double mid = 0.5 * (pts[k] + pts[k + 1]);
        if (std::max({receiver(mid), neutral(mid), sender(mid)}) <= 0.0)
            throw std::invalid_argument("output partition: gap in coverage of [0, 1]");
    }
}

// ---------------------------------------------------------------------------
// Controller

void EngineConfig::validate() const {
    breakpoints.validate();
    if (heavy_partition) require_ordered({heavy_partition->p_n, heavy_partition->q_n, heavy_partition->r_n}, "heavy partition");
    if (rules.empty()) throw std::invalid_argument("empty rule base");
    output.validate();
    if (!(band >= 0 && band < 0.5)) throw std::invalid_argument("classification band must be in [0, 0.5)");
}

FuzzyController::FuzzyController(EngineConfig cfg, int node_count)
    : cfg_(std::move(cfg)), heavy_(HeavyCountPartition::default_for(node_count)) {
    cfg_.validate();
    if (cfg_.heavy_partition) {
        heavy_ = *cfg_.heavy_partition;
        heavy_.n = node_count;
    }
    heavy_.validate();
}

InferenceResult FuzzyController::evaluate(double load, double heavy_count) const {
    InferenceResult res;
    res.load_degrees = fuzzify_load(load, cfg_.breakpoints);
    res.count_degrees = fuzzify_heavy_count(heavy_count, heavy_);
    res.activations = infer(res.load_degrees, res.count_degrees, cfg_.rules);
    try {
        res.centroid = defuzzify_centroid(res.activations, cfg_.output);
        res.status = classify_status(*res.centroid, cfg_.band);
    } catch (const NoRuleFired&) {
        res.status = NodeStatus::Neutral;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Text configuration

std::optional<LoadTerm> parse_load_term(std::string_view s) {
    if (s == "very-light") return LoadTerm::VeryLight;
    if (s == "light") return LoadTerm::Light;
    if (s == "moderate") return LoadTerm::Moderate;
    if (s == "heavy") return LoadTerm::Heavy;
    if (s == "very-heavy") return LoadTerm::VeryHeavy;
    return std::nullopt;
}

std::optional<CountTerm> parse_count_term(std::string_view s) {
    if (s == "less") return CountTerm::Less;
    if (s == "moreequal" || s == "more") return CountTerm::MoreEqual;
    return std::nullopt;
}

FuzzyRule parse_rule(std::string_view text) {
    const auto arrow = text.find("->");
    if (arrow == std::string_view::npos) throw ConfigError("rule: expected '<load> <count> -> <status>'");
    std::vector<std::string> lhs;
    for (auto& tok : split(trim(text.substr(0, arrow)), ' '))
        if (!tok.empty()) lhs.push_back(tok);
    const std::string rhs = trim(text.substr(arrow + 2));
    if (lhs.size() != 2) throw ConfigError("rule: expected two antecedent terms");

    FuzzyRule rule;
    if (lhs[0] != "any") {
        rule.load_term = parse_load_term(lhs[0]);
        if (!rule.load_term) throw ConfigError("rule: unknown load term '" + lhs[0] + "'");
    }
    if (lhs[1] != "any") {
        rule.count_term = parse_count_term(lhs[1]);
        if (!rule.count_term) throw ConfigError("rule: unknown count term '" + lhs[1] + "'");
    }
    if (rhs == "sender") rule.consequent = NodeStatus::Sender;
    else if (rhs == "receiver") rule.consequent = NodeStatus::Receiver;
    else throw ConfigError("rule: consequent must be sender or receiver, got '" + rhs + "'");
    return rule;
}

std::string format_rule(const FuzzyRule& r) {
    std::string out(r.load_term ? to_string(*r.load_term) : "any");
    out += ' ';
    out += r.count_term ? to_string(*r.count_term) : "any";
    out += r.consequent == NodeStatus::Sender ? " -> sender" : " -> receiver";
    return out;
}

namespace {

MembershipFunction parse_output_set(std::string_view value) {
    auto k = parse_double_list(value);
    if (k.size() == 3) return MembershipFunction::triangle(k[0], k[1], k[2]);
    if (k.size() == 4) return MembershipFunction::trapezoid(k[0], k[1], k[2], k[3]);
    throw ConfigError("output set needs 3 (triangle) or 4 (trapezoid) knots");
}

std::string format_output_set(const MembershipFunction& mf) { return join(mf.knots()); }

}  // namespace

bool apply_engine_key(EngineConfig& cfg, std::string_view key, std::string_view value, bool& rules_replaced) {
    try {
        if (key == "breakpoints") {
            auto v = parse_double_list(value);
            if (v.size() != 8) throw ConfigError("breakpoints needs 8 values p,q,r,s,t,u,v,w");
            std::array<double, 8> a{};
            std::copy(v.begin(), v.end(), a.begin());
            auto bp = Breakpoints::from_array(a);
            bp.validate();
            cfg.breakpoints = bp;
        } else if (key == "heavy-partition") {
            auto v = parse_double_list(value);
            if (v.size() != 3) throw ConfigError("heavy-partition needs 3 values pN,qN,rN");
            // n is bound when the controller is built; only ordering is checked here.
            require_ordered({v[0], v[1], v[2]}, "heavy partition");
            cfg.heavy_partition = HeavyCountPartition{v[0], v[1], v[2], 0};
        } else if (key == "band") {
            cfg.band = parse_double(value);
        } else if (key == "output-receiver") {
            cfg.output.receiver = parse_output_set(value);
        } else if (key == "output-neutral") {
            cfg.output.neutral = parse_output_set(value);
        } else if (key == "output-sender") {
            cfg.output.sender = parse_output_set(value);
        } else if (key == "rule") {
            auto rule = parse_rule(value);
            std::vector<FuzzyRule> rules = rules_replaced ? cfg.rules.rules() : std::vector<FuzzyRule>{};
            rules.push_back(rule);
            cfg.rules = RuleBase(std::move(rules));
            rules_replaced = true;
        } else {
            return false;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
    return true;
}

EngineConfig load_engine_config(std::istream& in) {
    EngineConfig cfg;
    bool replaced = false;
    for (const auto& kv : parse_key_values(in))
        if (!apply_engine_key(cfg, kv.key, kv.value, replaced))
            throw ConfigError("line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    return cfg;
}

void write_engine_config(std::ostream& out, const EngineConfig& cfg) {
    auto bp = cfg.breakpoints.as_array();
    out << "breakpoints = " << join(std::vector<double>(bp.begin(), bp.end())) << '\n';
    if (cfg.heavy_partition) {
        const auto& h = *cfg.heavy_partition;
        out << "heavy-partition = " << join(std::vector<double>{h.p_n, h.q_n, h.r_n}) << '\n';
    }
    out << "band = " << format_double(cfg.band) << '\n';
    out << "output-receiver = " << format_output_set(cfg.output.receiver) << '\n';
    out << "output-neutral = " << format_output_set(cfg.output.neutral) << '\n';
    out << "output-sender = " << format_output_set(cfg.output.sender) << '\n';
    for (const auto& r : cfg.rules.rules()) out << "rule = " << format_rule(r) << '\n';
}

}  // namespace fuzzylb
