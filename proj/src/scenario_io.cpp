#include "chalsim/scenario_io.hpp"

#include <algorithm>
#include <set>
#include <string>

#include <json.hpp>

#include "chalsim/error.hpp"

namespace chalsim {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& why) {
    fail(errc::parse_error, "scenario: " + where + ": " + why);
}

const json& object_at(const json& obj, const std::string& where) {
    if (!obj.is_object()) bad(where, "expected an object");
    return obj;
}

// Strict key policy: everything must be listed, nothing extra tolerated.
void check_keys(const json& obj, const std::string& where, const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!required.count(key) && !optional.count(key)) bad(where, "unknown key '" + key + "'");
    }
    for (const std::string& key : required)
        if (!obj.contains(key)) bad(where, "missing key '" + key + "'");
}

const json& field(const json& obj, const std::string& where, const std::string& key) {
    return object_at(obj, where).at(key);
}

std::string string_field(const json& obj, const std::string& where, const std::string& key) {
    const json& v = field(obj, where, key);
    if (!v.is_string()) bad(where + "." + key, "expected a string");
    return v.get<std::string>();
}

// Amounts travel as decimal strings so no binary floating point ever touches
// the accounting path.
Currency currency_field(const json& obj, const std::string& where, const std::string& key) {
    return Currency::parse(string_field(obj, where, key));
}

Rat fraction_field(const json& obj, const std::string& where, const std::string& key) {
    return Rat::parse(string_field(obj, where, key));
}

int64_t count_field(const json& obj, const std::string& where, const std::string& key) {
    const json& v = field(obj, where, key);
    if (!v.is_number_integer() || v.is_number_float()) bad(where + "." + key, "expected an integer");
    return v.get<int64_t>();
}

uint64_t seed_field(const json& obj, const std::string& where, const std::string& key) {
    const json& v = field(obj, where, key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<int64_t>() >= 0)))
        bad(where + "." + key, "expected a non-negative integer");
    return v.get<uint64_t>();
}

CostProfile cost_profile(const json& obj, const std::string& where) {
    check_keys(object_at(obj, where), where, {"init", "proc"});
    return CostProfile{currency_field(obj, where, "init"), currency_field(obj, where, "proc")};
}

WinnerPolicy winner_policy(const json& obj, const std::string& where) {
    const std::string kind = string_field(obj, where, "kind");
    if (kind == "single") {
        check_keys(obj, where, {"kind"});
        return WinnerPolicy::single();
    }
    if (kind == "non_exclusion") {
        check_keys(obj, where, {"kind"});
        return WinnerPolicy::non_exclusion();
    }
    if (kind == "capped") {
        check_keys(obj, where, {"kind", "m"});
        return WinnerPolicy::capped(count_field(obj, where, "m"));
    }
    bad(where + ".kind", "expected single, non_exclusion, or capped");
}

OrderingRegime ordering_regime(const json& obj, const std::string& where) {
    const std::string kind = string_field(obj, where, "kind");
    if (kind == "fair") {
        check_keys(obj, where, {"kind"}, {"window_delta"});
        Currency window;
        if (obj.contains("window_delta")) window = currency_field(obj, where, "window_delta");
        return OrderingRegime::fair(window);
    }
    if (kind == "builder_priority" || kind == "proposer_priority") {
        check_keys(obj, where, {"kind", "eps"});
        const Currency eps = currency_field(obj, where, "eps");
        return kind == "builder_priority" ? OrderingRegime::builder_priority(eps)
                                          : OrderingRegime::proposer_priority(eps);
    }
    bad(where + ".kind", "expected fair, builder_priority, or proposer_priority");
}

HonestRule honest_rule(const std::string& text, const std::string& where) {
    if (text == "best_effort") return HonestRule::BestEffort;
    if (text == "always_participate") return HonestRule::AlwaysParticipate;
    if (text == "abstain") return HonestRule::Abstain;
    bad(where, "expected best_effort, always_participate, or abstain");
}

CoalitionRule coalition_rule(const std::string& text, const std::string& where) {
    if (text == "recapture") return CoalitionRule::Recapture;
    if (text == "priority_capture") return CoalitionRule::PriorityCapture;
    if (text == "passive") return CoalitionRule::Passive;
    bad(where, "expected recapture, priority_capture, or passive");
}

std::string honest_rule_name(HonestRule rule) {
    switch (rule) {
        case HonestRule::BestEffort: return "best_effort";
        case HonestRule::AlwaysParticipate: return "always_participate";
        case HonestRule::Abstain: return "abstain";
    }
    fail(errc::invalid_argument, "unknown honest rule");
}

std::string coalition_rule_name(CoalitionRule rule) {
    switch (rule) {
        case CoalitionRule::Recapture: return "recapture";
        case CoalitionRule::PriorityCapture: return "priority_capture";
        case CoalitionRule::Passive: return "passive";
    }
    fail(errc::invalid_argument, "unknown coalition rule");
}

// Fractions that came from a decimal string always render back exactly;
// anything else would silently change value on a save/load cycle.
std::string exact_decimal(const Rat& value, const std::string& what) {
    if (Currency::kScale % value.den() != 0)
        fail(errc::range_error,
             what + " = " + value.to_fraction_string() + " has no exact decimal form");
    return value.to_decimal_string();
}

} // namespace

Scenario parse_scenario(std::string_view text) {
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) bad("document", "not valid JSON");
    check_keys(object_at(doc, "document"), "document", {"population", "protocol", "regime", "seed"},
               {"strategy"});

    Scenario s;

    const json& pop = field(doc, "document", "population");
    check_keys(object_at(pop, "population"), "population",
               {"n", "coalition_ids", "cost_bounds", "cost_sampling"});
    s.population.n = count_field(pop, "population", "n");

    const json& ids = field(pop, "population", "coalition_ids");
    if (!ids.is_array()) bad("population.coalition_ids", "expected an array");
    for (const json& id : ids) {
        if (!id.is_number_integer()) bad("population.coalition_ids", "expected integers");
        s.population.coalition.push_back(id.get<int64_t>());
    }
    std::sort(s.population.coalition.begin(), s.population.coalition.end());

    const CostProfile bounds =
        cost_profile(field(pop, "population", "cost_bounds"), "population.cost_bounds");
    s.population.cost_bounds = CostBounds{bounds.init, bounds.proc};

    const json& sampling = field(pop, "population", "cost_sampling");
    const std::string sampling_kind = string_field(sampling, "population.cost_sampling", "kind");
    if (sampling_kind == "worst_case" || sampling_kind == "uniform_up_to") {
        check_keys(sampling, "population.cost_sampling", {"kind"});
        s.cost_sampling = sampling_kind == "worst_case" ? CostSamplingKind::WorstCase
                                                        : CostSamplingKind::UniformUpTo;
        s.population.cost_profiles.assign(
            static_cast<size_t>(std::max<int64_t>(s.population.n, 0)),
            CostProfile{s.population.cost_bounds.init, s.population.cost_bounds.proc});
    } else if (sampling_kind == "fixed") {
        check_keys(sampling, "population.cost_sampling", {"kind", "costs"});
        s.cost_sampling = CostSamplingKind::Fixed;
        const json& costs = field(sampling, "population.cost_sampling", "costs");
        if (!costs.is_array()) bad("population.cost_sampling.costs", "expected an array");
        for (const json& c : costs)
            s.population.cost_profiles.push_back(cost_profile(c, "population.cost_sampling.costs[]"));
    } else {
        bad("population.cost_sampling.kind", "expected worst_case, uniform_up_to, or fixed");
    }

    const json& protocol = field(doc, "document", "protocol");
    check_keys(object_at(protocol, "protocol"), "protocol",
               {"deposit", "alpha", "eta", "winner_policy"}, {"stake"});
    s.params.deposit = currency_field(protocol, "protocol", "deposit");
    s.params.alpha = fraction_field(protocol, "protocol", "alpha");
    s.params.eta = fraction_field(protocol, "protocol", "eta");
    s.params.policy = winner_policy(field(protocol, "protocol", "winner_policy"),
                                    "protocol.winner_policy");
    if (protocol.contains("stake")) s.params.stake = currency_field(protocol, "protocol", "stake");

    s.regime = ordering_regime(field(doc, "document", "regime"), "regime");
    s.seed = seed_field(doc, "document", "seed");

    if (doc.contains("strategy")) {
        const json& strategy = field(doc, "document", "strategy");
        check_keys(object_at(strategy, "strategy"), "strategy", {"honest", "coalition"});
        StrategyConfig cfg;
        cfg.honest = honest_rule(string_field(strategy, "strategy", "honest"), "strategy.honest");
        cfg.coalition =
            coalition_rule(string_field(strategy, "strategy", "coalition"), "strategy.coalition");
        s.strategy = cfg;
    }

    s.validate();
    return s;
}

std::string serialize_scenario(const Scenario& scenario) {
    scenario.validate();
    json doc;

    json pop;
    pop["n"] = scenario.population.n;
    pop["coalition_ids"] = scenario.population.coalition;
    pop["cost_bounds"] = {{"init", scenario.population.cost_bounds.init.to_string()},
                          {"proc", scenario.population.cost_bounds.proc.to_string()}};
    switch (scenario.cost_sampling) {
        case CostSamplingKind::WorstCase: pop["cost_sampling"] = {{"kind", "worst_case"}}; break;
        case CostSamplingKind::UniformUpTo:
            pop["cost_sampling"] = {{"kind", "uniform_up_to"}};
            break;
        case CostSamplingKind::Fixed: {
            json costs = json::array();
            for (const CostProfile& p : scenario.population.cost_profiles)
                costs.push_back({{"init", p.init.to_string()}, {"proc", p.proc.to_string()}});
            pop["cost_sampling"] = {{"kind", "fixed"}, {"costs", std::move(costs)}};
            break;
        }
    }
    doc["population"] = std::move(pop);

    json protocol;
    protocol["deposit"] = scenario.params.deposit.to_string();
    protocol["alpha"] = exact_decimal(scenario.params.alpha, "alpha");
    protocol["eta"] = exact_decimal(scenario.params.eta, "eta");
    switch (scenario.params.policy.kind) {
        case WinnerPolicyKind::SingleWinner:
            protocol["winner_policy"] = {{"kind", "single"}};
            break;
        case WinnerPolicyKind::NonExclusion:
            protocol["winner_policy"] = {{"kind", "non_exclusion"}};
            break;
        case WinnerPolicyKind::Capped:
            protocol["winner_policy"] = {{"kind", "capped"}, {"m", scenario.params.policy.cap}};
            break;
    }
    protocol["stake"] = scenario.params.stake.to_string();
    doc["protocol"] = std::move(protocol);

    json regime;
    switch (scenario.regime.kind) {
        case OrderingRegimeKind::FairOrdering:
            regime["kind"] = "fair";
            regime["window_delta"] = scenario.regime.window_delta.to_string();
            break;
        case OrderingRegimeKind::BuilderPriority:
            regime["kind"] = "builder_priority";
            regime["eps"] = scenario.regime.bid_increment_eps.to_string();
            break;
        case OrderingRegimeKind::ProposerPriority:
            regime["kind"] = "proposer_priority";
            regime["eps"] = scenario.regime.bid_increment_eps.to_string();
            break;
    }
    doc["regime"] = std::move(regime);

    doc["seed"] = scenario.seed;
    if (scenario.strategy) {
        doc["strategy"] = {{"honest", honest_rule_name(scenario.strategy->honest)},
                           {"coalition", coalition_rule_name(scenario.strategy->coalition)}};
    }

    return doc.dump(2) + "\n";
}

} // namespace chalsim
