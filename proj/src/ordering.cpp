#include "chalsim/ordering.hpp"

#include <algorithm>

namespace chalsim {

namespace {

// Winner first, everyone else in random order behind it.
std::vector<int64_t> winner_first_order(int64_t winner, const std::vector<int64_t>& participants,
                                        Rng& rng) {
    std::vector<int64_t> rest;
    rest.reserve(participants.size());
    for (int64_t id : participants)
        if (id != winner) rest.push_back(id);
    rng.shuffle(rest);
    std::vector<int64_t> order;
    order.reserve(participants.size());
    order.push_back(winner);
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

// Highest value wins; ties go to the lowest id.
const Bid* best_bid(const std::vector<Bid>& bids) {
    const Bid* best = nullptr;
    for (const Bid& b : bids)
        if (!best || b.value > best->value || (b.value == best->value && b.bidder < best->bidder))
            best = &b;
    return best;
}

Currency clearing_price(Currency winner_value, Currency eps) {
    Currency price = winner_value - eps;
    return price.is_negative() ? Currency{} : price;
}

} // namespace

OrderingResult fair_permutation(const std::vector<int64_t>& participants, Currency /*window_delta*/,
                                Rng& rng) {
    if (participants.empty()) fail(errc::empty_dispute, "cannot order an empty participant set");
    OrderingResult result;
    result.order = participants;
    rng.shuffle(result.order);
    return result;
}

OrderingResult clear_builder_auction(const std::vector<Bid>& bids, Currency eps,
                                     const std::vector<int64_t>& participants, Rng& rng) {
    std::vector<Bid> live;
    for (const Bid& b : bids)
        if (b.value > Currency{}) live.push_back(b);
    if (live.empty()) return fair_permutation(participants, Currency{}, rng);

    const Bid* winner = best_bid(live);
    OrderingResult result;
    result.clearing_fee = clearing_price(winner->value, eps);
    result.fees_paid[winner->bidder] = result.clearing_fee;
    result.fee_recipient = FeeRecipient::Builder;
    result.noncompetitive = live.size() == 1;
    result.coalition_captured = winner->is_coalition;
    result.order = winner_first_order(winner->bidder, participants, rng);
    return result;
}

OrderingResult clear_proposer_auction(const std::vector<Bid>& bids, Currency eps,
                                      const std::vector<int64_t>& participants, Rng& rng) {
    // Coalition bids are live at any value: the fee flows back to their own
    // side, so the slot costs them nothing. Honest bids need positive value.
    const Bid* coalition_pick = nullptr;
    std::vector<Bid> honest_live;
    for (const Bid& b : bids) {
        if (b.is_coalition) {
            if (!coalition_pick || b.bidder < coalition_pick->bidder) coalition_pick = &b;
        } else if (b.value > Currency{}) {
            honest_live.push_back(b);
        }
    }

    if (coalition_pick) {
        OrderingResult result;
        // Outbid the price honest competition would have set. Uncontested
        // capture pays nothing.
        if (!honest_live.empty())
            result.clearing_fee = clearing_price(best_bid(honest_live)->value, eps) + eps;
        result.fees_paid[coalition_pick->bidder] = result.clearing_fee;
        result.fee_recipient = FeeRecipient::Proposer;
        result.noncompetitive = honest_live.empty();
        result.coalition_captured = true;
        result.order = winner_first_order(coalition_pick->bidder, participants, rng);
        return result;
    }

    OrderingResult result = clear_builder_auction(honest_live, eps, participants, rng);
    if (result.fee_recipient == FeeRecipient::Builder) result.fee_recipient = FeeRecipient::Proposer;
    return result;
}

std::vector<Bid> build_bids(const Scenario& scenario, const std::vector<int64_t>& participants,
                            const std::vector<CostProfile>& costs, int64_t m_eff) {
    const bool proposer_run = scenario.regime.kind == OrderingRegimeKind::ProposerPriority;
    const bool priority_capture = scenario.effective_strategy().coalition == CoalitionRule::PriorityCapture;
    const Currency reward = winner_reward(scenario.params, m_eff);

    std::vector<Bid> bids;
    for (int64_t id : participants) {
        Bid b;
        b.bidder = id;
        b.value = reward - costs[static_cast<size_t>(id)].proc;
        b.is_coalition = scenario.population.is_coalition(id);
        if (b.is_coalition && !priority_capture) continue; // not bidding, only submitting
        // A proposer-run auction refunds coalition fees to their own side, so
        // those bids are free; everyone else only bids for positive value.
        const bool zero_cost = b.is_coalition && proposer_run;
        if (!zero_cost && !(b.value > Currency{})) continue;
        b.bid_amount = b.value;
        bids.push_back(b);
    }
    return bids;
}

OrderingResult realize_order(const Scenario& scenario, const std::vector<int64_t>& valid_challengers,
                             const std::vector<CostProfile>& costs, Rng& rng) {
    if (valid_challengers.empty()) fail(errc::empty_dispute, "cannot order an empty participant set");

    const int64_t n_valid = static_cast<int64_t>(valid_challengers.size());
    const int64_t m_eff = effective_m(scenario.params, n_valid);

    // Priority only matters when inclusion is scarce.
    const bool scarce = m_eff < n_valid;
    if (!scarce || scenario.regime.kind == OrderingRegimeKind::FairOrdering)
        return fair_permutation(valid_challengers, scenario.regime.window_delta, rng);

    std::vector<Bid> bids = build_bids(scenario, valid_challengers, costs, m_eff);
    if (scenario.regime.kind == OrderingRegimeKind::BuilderPriority)
        return clear_builder_auction(bids, scenario.regime.bid_increment_eps, valid_challengers, rng);
    return clear_proposer_auction(bids, scenario.regime.bid_increment_eps, valid_challengers, rng);
}

} // namespace chalsim
