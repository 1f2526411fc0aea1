#pragma once

#include <cstdint>
#include <vector>

#include "chalsim/currency.hpp"
#include "chalsim/model.hpp"
#include "chalsim/rng.hpp"

namespace chalsim {

// Ex-ante participation verdict for one challenger. The bound is computed
// from public information only — payout share, deposit, announced capacity,
// the cost upper bound, and an exogenous fee ceiling — never from private
// costs or coalition knowledge.
struct ParticipationDecision {
    int64_t challenger = 0;
    bool participates = false;
    Currency conservative_bound; // worst-case net payoff if included
};

// Announced inclusion capacity used for the participation bound: the policy's
// capacity at the full population (1 for single-winner, N for non-exclusion).
int64_t announced_capacity(const Scenario& scenario);

// One decision per challenger. Honest challengers follow their rule
// (best-effort compares the conservative bound against zero); coalition
// members submit exactly when at least one honest challenger does, unless
// configured passive.
std::vector<ParticipationDecision> decide_participation(const Scenario& scenario, Currency f_upper);

// Plays one dispute in a fraudulent state end to end: sample costs, decide
// participation, realize the order, pick winners, settle all accounts.
// Deterministic given the rng stream. Zero participation is a valid outcome
// (fraud escapes, nothing is slashed), not an error.
DisputeOutcome run_dispute(const Scenario& scenario, Rng& rng);

// Recomputes the adversary's loss from a settled outcome: the slashed deposit
// minus rewards captured by coalition winners, minus honest fees that landed
// in the proposer's pocket. Used to cross-check the engine's own accounting.
Currency recompute_adversary_loss(const DisputeOutcome& outcome, const Population& pop);

} // namespace chalsim
