#include "chalsim/model.hpp"

#include <algorithm>

#include "chalsim/rng.hpp"

namespace chalsim {

WinnerPolicy WinnerPolicy::capped(int64_t m) {
    if (m < 1) fail(errc::invalid_argument, "winner cap must be at least 1");
    return {WinnerPolicyKind::Capped, m};
}

void ProtocolParams::validate() const {
    if (!(deposit > Currency{})) fail(errc::invalid_argument, "deposit must be positive");
    if (!(alpha > Rat::from_int(0)) || alpha > Rat::from_int(1))
        fail(errc::invalid_argument, "alpha must lie in (0, 1], got " + alpha.to_decimal_string());
    if (!(eta > Rat::from_int(0)) || !(eta < Rat::from_int(1)))
        fail(errc::invalid_argument, "eta must lie in (0, 1), got " + eta.to_decimal_string());
    if (policy.kind == WinnerPolicyKind::Capped && policy.cap < 1)
        fail(errc::invalid_argument, "winner cap must be at least 1");
    if (stake.is_negative()) fail(errc::invalid_argument, "stake must be non-negative");
}

void Population::validate() const {
    if (n < 1) fail(errc::invalid_population, "population needs at least one challenger");
    // Collusion is only tolerable as a strict minority: 2A < N.
    if (2 * coalition_size() >= n)
        fail(errc::invalid_population,
             "coalition of " + std::to_string(coalition.size()) + " is not a strict minority of " +
                 std::to_string(n));
    if (!std::is_sorted(coalition.begin(), coalition.end()))
        fail(errc::invalid_population, "coalition ids must be sorted");
    if (std::adjacent_find(coalition.begin(), coalition.end()) != coalition.end())
        fail(errc::invalid_population, "coalition ids must be unique");
    for (int64_t id : coalition)
        if (id < 0 || id >= n)
            fail(errc::invalid_population, "coalition id " + std::to_string(id) + " out of range");
    if (static_cast<int64_t>(cost_profiles.size()) != n)
        fail(errc::invalid_population, "expected " + std::to_string(n) + " cost profiles, got " +
                                           std::to_string(cost_profiles.size()));
    if (cost_bounds.init.is_negative() || cost_bounds.proc.is_negative())
        fail(errc::invalid_population, "cost bounds must be non-negative");
    for (const CostProfile& p : cost_profiles) {
        if (p.init.is_negative() || p.proc.is_negative())
            fail(errc::invalid_population, "cost components must be non-negative");
        if (p.init > cost_bounds.init || p.proc > cost_bounds.proc)
            fail(errc::invalid_population, "cost profile exceeds the public bounds");
    }
}

bool Population::is_coalition(int64_t id) const {
    return std::binary_search(coalition.begin(), coalition.end(), id);
}

OrderingRegime OrderingRegime::fair(Currency window) {
    OrderingRegime r;
    r.kind = OrderingRegimeKind::FairOrdering;
    r.window_delta = window;
    return r;
}

OrderingRegime OrderingRegime::builder_priority(Currency eps) {
    OrderingRegime r;
    r.kind = OrderingRegimeKind::BuilderPriority;
    r.bid_increment_eps = eps;
    return r;
}

OrderingRegime OrderingRegime::proposer_priority(Currency eps) {
    OrderingRegime r;
    r.kind = OrderingRegimeKind::ProposerPriority;
    r.bid_increment_eps = eps;
    return r;
}

void OrderingRegime::validate() const {
    switch (kind) {
        case OrderingRegimeKind::FairOrdering:
            if (window_delta.is_negative())
                fail(errc::invalid_argument, "arrival window must be non-negative");
            break;
        case OrderingRegimeKind::BuilderPriority:
        case OrderingRegimeKind::ProposerPriority:
            if (!(bid_increment_eps > Currency{}))
                fail(errc::invalid_argument, "bid increment must be positive");
            break;
    }
}

void Scenario::validate() const {
    population.validate();
    params.validate();
    regime.validate();
    if (params.policy.kind == WinnerPolicyKind::Capped && params.policy.cap > population.n)
        fail(errc::invalid_argument, "winner cap exceeds the challenger count");
    if (strategy && strategy->coalition == CoalitionRule::PriorityCapture &&
        regime.kind == OrderingRegimeKind::FairOrdering)
        fail(errc::invalid_argument, "priority capture requires a priority-auction regime");
}

StrategyConfig Scenario::effective_strategy() const {
    if (strategy) return *strategy;
    StrategyConfig s;
    s.honest = HonestRule::BestEffort;
    // With a priority auction available the coalition's best response includes
    // bidding for the slot; under fair ordering there is no slot to buy.
    s.coalition = regime.kind == OrderingRegimeKind::FairOrdering ? CoalitionRule::Recapture
                                                                  : CoalitionRule::PriorityCapture;
    return s;
}

int64_t effective_m(const ProtocolParams& params, int64_t n_valid) {
    if (n_valid < 0) fail(errc::invalid_argument, "valid-challenge count must be non-negative");
    switch (params.policy.kind) {
        case WinnerPolicyKind::SingleWinner: return std::min<int64_t>(1, n_valid);
        case WinnerPolicyKind::NonExclusion: return n_valid;
        case WinnerPolicyKind::Capped: return std::min(params.policy.cap, n_valid);
    }
    fail(errc::invalid_argument, "unknown winner policy");
}

Currency winner_reward(const ProtocolParams& params, int64_t m) {
    if (m == 0) fail(errc::no_winners, "no valid challenge was included; deposit is not slashed");
    if (m < 0) fail(errc::invalid_argument, "winner count must be non-negative");
    // Equal split of the paid share, floored to minor units; the remainder is
    // accounted to the burn bucket by the engine.
    return Currency::from_minor(params.alpha.mul_floor(params.deposit.minor(), m));
}

Rat coalition_fraction(const Population& pop) {
    if (pop.n < 1) fail(errc::invalid_population, "population needs at least one challenger");
    return Rat(pop.coalition_size(), pop.n);
}

std::vector<CostProfile> realize_costs(const Scenario& scenario, Rng& rng) {
    const Population& pop = scenario.population;
    std::vector<CostProfile> out;
    out.reserve(static_cast<size_t>(pop.n));
    switch (scenario.cost_sampling) {
        case CostSamplingKind::WorstCase:
            out.assign(static_cast<size_t>(pop.n),
                       CostProfile{pop.cost_bounds.init, pop.cost_bounds.proc});
            break;
        case CostSamplingKind::Fixed:
            out = pop.cost_profiles;
            break;
        case CostSamplingKind::UniformUpTo:
            for (int64_t i = 0; i < pop.n; ++i) {
                CostProfile p;
                p.init = Currency::from_minor(rng.bounded_inclusive(pop.cost_bounds.init.minor()));
                p.proc = Currency::from_minor(rng.bounded_inclusive(pop.cost_bounds.proc.minor()));
                out.push_back(p);
            }
            break;
    }
    return out;
}

} // namespace chalsim
