#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "chalsim/currency.hpp"
#include "chalsim/model.hpp"
#include "chalsim/rng.hpp"

namespace chalsim {

// One priority-auction bid. `value` is the bidder's private value for the
// slot: the per-winner reward minus that bidder's processing cost.
struct Bid {
    int64_t bidder = 0;
    Currency value;
    Currency bid_amount;
    bool is_coalition = false;
};

// Realized inclusion order plus the fee flow that produced it.
struct OrderingResult {
    std::vector<int64_t> order;            // all participants, inclusion order
    std::map<int64_t, Currency> fees_paid; // only agents that actually paid
    FeeRecipient fee_recipient = FeeRecipient::None;
    Currency clearing_fee;                 // price of the priority slot (0 without an auction)
    bool noncompetitive = false;           // auction cleared with a single live bid
    bool coalition_captured = false;       // a coalition bid took the priority slot
};

// Uniformly random permutation of the participants with zero fees. The arrival
// window is carried for interface stability; every arrival inside it is
// treated as simultaneous, so it does not partition the draw.
OrderingResult fair_permutation(const std::vector<int64_t>& participants, Currency window_delta,
                                Rng& rng);

// Priority slot sold by an external builder. Bids at or below zero value stay
// out; the highest value wins (ties to the lowest id) and pays its value minus
// eps, floored at zero, to the builder. With no live bid the order falls back
// to a fair permutation. `participants` must contain every bidder.
OrderingResult clear_builder_auction(const std::vector<Bid>& bids, Currency eps,
                                     const std::vector<int64_t>& participants, Rng& rng);

// Priority slot sold by the proposer. Any coalition bid wins outright: the
// coalition outbids the honest clearing price by eps at no effective cost,
// since the fee returns to its own side. Honest-only competition clears like
// the builder auction but pays the proposer.
OrderingResult clear_proposer_auction(const std::vector<Bid>& bids, Currency eps,
                                      const std::vector<int64_t>& participants, Rng& rng);

// Builds the bid list for an auction regime from the participants' strategy
// and realized costs. Coalition members bid only under a priority-capture
// rule; under a proposer-run auction they bid unconditionally (zero effective
// cost), elsewhere only when the slot has positive value to them.
std::vector<Bid> build_bids(const Scenario& scenario, const std::vector<int64_t>& participants,
                            const std::vector<CostProfile>& costs, int64_t m_eff);

// Regime dispatch for one trial. When every valid challenge will be included
// anyway, priority is worthless, so every regime reduces to a fair
// permutation with zero fees.
OrderingResult realize_order(const Scenario& scenario, const std::vector<int64_t>& valid_challengers,
                             const std::vector<CostProfile>& costs, Rng& rng);

} // namespace chalsim
