#include "chalsim/engine.hpp"

#include <algorithm>

#include "chalsim/ordering.hpp"

namespace chalsim {

int64_t announced_capacity(const Scenario& scenario) {
    switch (scenario.params.policy.kind) {
        case WinnerPolicyKind::SingleWinner: return 1;
        case WinnerPolicyKind::NonExclusion: return scenario.population.n;
        case WinnerPolicyKind::Capped:
            return std::min(scenario.params.policy.cap, scenario.population.n);
    }
    fail(errc::invalid_argument, "unknown winner policy");
}

std::vector<ParticipationDecision> decide_participation(const Scenario& scenario, Currency f_upper) {
    if (f_upper.is_negative()) fail(errc::invalid_argument, "fee ceiling must be non-negative");

    const Population& pop = scenario.population;
    const StrategyConfig strategy = scenario.effective_strategy();

    // Worst-case net payoff if included: the per-winner share at announced
    // capacity, minus the public cost bound, minus the fee ceiling.
    const Currency share =
        Currency::from_minor(scenario.params.alpha.mul_floor(scenario.params.deposit.minor(),
                                                             announced_capacity(scenario)));
    const Currency bound = share - pop.cost_bounds.total() - f_upper;

    bool honest_in = false;
    switch (strategy.honest) {
        case HonestRule::BestEffort: honest_in = !bound.is_negative(); break;
        case HonestRule::AlwaysParticipate: honest_in = true; break;
        case HonestRule::Abstain: honest_in = false; break;
    }

    // The coalition submits its own challenges exactly when some honest
    // challenger is expected to submit — otherwise letting the fraud pass
    // keeps the whole deposit safe.
    const bool any_honest = pop.coalition_size() < pop.n;
    const bool coalition_in =
        strategy.coalition != CoalitionRule::Passive && honest_in && any_honest;

    std::vector<ParticipationDecision> decisions;
    decisions.reserve(static_cast<size_t>(pop.n));
    for (int64_t id = 0; id < pop.n; ++id) {
        ParticipationDecision d;
        d.challenger = id;
        d.conservative_bound = bound;
        d.participates = pop.is_coalition(id) ? coalition_in : honest_in;
        decisions.push_back(d);
    }
    return decisions;
}

DisputeOutcome run_dispute(const Scenario& scenario, Rng& rng) {
    const Population& pop = scenario.population;

    const std::vector<CostProfile> costs = realize_costs(scenario, rng);
    const std::vector<ParticipationDecision> decisions = decide_participation(scenario, Currency{});

    std::vector<int64_t> participants;
    for (const ParticipationDecision& d : decisions)
        if (d.participates) participants.push_back(d.challenger);

    DisputeOutcome outcome;
    for (int64_t id = 0; id < pop.n; ++id) outcome.utilities[id] = Currency{};

    if (participants.empty()) {
        // Nobody challenged: the fraud stands and the deposit survives.
        outcome.fraud_caught = false;
        return outcome;
    }

    const OrderingResult ordering = realize_order(scenario, participants, costs, rng);
    const int64_t m = effective_m(scenario.params, static_cast<int64_t>(participants.size()));
    const Currency reward = winner_reward(scenario.params, m);

    outcome.fraud_caught = true;
    outcome.realized_order = ordering.order;
    outcome.winners.assign(ordering.order.begin(), ordering.order.begin() + m);
    outcome.fees_paid = ordering.fees_paid;
    outcome.fee_recipient = ordering.fee_recipient;
    outcome.clearing_fee = ordering.clearing_fee;
    outcome.noncompetitive = ordering.noncompetitive;

    // The paid share splits equally among winners; the sub-minor-unit
    // remainder of the division joins the burn bucket.
    outcome.distributed = reward.scaled(m);
    outcome.burned = scenario.params.deposit - outcome.distributed;

    std::vector<bool> is_winner(static_cast<size_t>(pop.n), false);
    for (int64_t id : outcome.winners) is_winner[static_cast<size_t>(id)] = true;

    for (int64_t id : participants) {
        const CostProfile& cost = costs[static_cast<size_t>(id)];
        Currency u = -cost.init; // identification is sunk for every participant
        if (is_winner[static_cast<size_t>(id)]) {
            u += reward - cost.proc; // only included challenges are processed
            auto fee = ordering.fees_paid.find(id);
            if (fee != ordering.fees_paid.end()) u -= fee->second;
        }
        outcome.utilities[id] = u;
    }

    outcome.adversary_loss = recompute_adversary_loss(outcome, pop);
    return outcome;
}

Currency recompute_adversary_loss(const DisputeOutcome& outcome, const Population& pop) {
    if (!outcome.fraud_caught) return Currency{};

    const Currency deposit = outcome.distributed + outcome.burned;
    const int64_t m = static_cast<int64_t>(outcome.winners.size());
    const Currency reward = Currency::from_minor(outcome.distributed.minor() / m);

    Currency recovered;
    for (int64_t id : outcome.winners)
        if (pop.is_coalition(id)) recovered += reward;

    // Fees the proposer pockets from honest challengers flow straight back to
    // the adversary's side; coalition-paid fees are internal and net to zero.
    if (outcome.fee_recipient == FeeRecipient::Proposer)
        for (const auto& [payer, fee] : outcome.fees_paid)
            if (!pop.is_coalition(payer)) recovered += fee;

    return deposit - recovered;
}

} // namespace chalsim
