#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chalsim/currency.hpp"
#include "chalsim/error.hpp"
#include "chalsim/rational.hpp"

namespace chalsim {

// Per-challenger cost structure: identifying fraud costs c_init (paid by every
// participant), processing a challenge to completion costs c_proc (paid only
// when the challenge is included in the winner set).
struct CostProfile {
    Currency init;
    Currency proc;

    Currency total() const { return init + proc; }
};

// Public upper bounds on the cost components; every sampled profile must fit
// under them. The combined bound is exact by construction.
struct CostBounds {
    Currency init;
    Currency proc;

    Currency total() const { return init + proc; }
};

enum class WinnerPolicyKind {
    SingleWinner,  // only the first valid challenge wins
    NonExclusion,  // every valid challenge wins
    Capped,        // at most m challenges win
};

struct WinnerPolicy {
    WinnerPolicyKind kind = WinnerPolicyKind::SingleWinner;
    int64_t cap = 1;  // meaningful only for Capped

    static WinnerPolicy single() { return {WinnerPolicyKind::SingleWinner, 1}; }
    static WinnerPolicy non_exclusion() { return {WinnerPolicyKind::NonExclusion, 0}; }
    static WinnerPolicy capped(int64_t m);
};

// Protocol knobs under calibration: deposit, payout share, deterrence target,
// winner policy, and the (economically inert) challenger stake.
struct ProtocolParams {
    Currency deposit;        // proposer deposit, slashed when fraud is caught
    Rat alpha;               // share of the slashed deposit paid to winners, (0,1]
    Rat eta;                 // required fraction of the deposit the adversary must lose, (0,1)
    WinnerPolicy policy;
    Currency stake;          // per-challenger stake; recorded, never slashed or paid

    void validate() const;
};

// How per-trial cost profiles are chosen.
enum class CostSamplingKind {
    WorstCase,    // every profile pinned to the public bounds
    UniformUpTo,  // each component uniform on [0, bound], redrawn per trial
    Fixed,        // the profiles stored in the population, unchanged
};

// The challenger set: size, which ids collude with the proposer, realized
// cost profiles, and the public bounds they respect.
struct Population {
    int64_t n = 0;
    std::vector<int64_t> coalition;         // sorted, unique ids in [0, n)
    std::vector<CostProfile> cost_profiles; // length n
    CostBounds cost_bounds;

    void validate() const;
    bool is_coalition(int64_t id) const;
    int64_t coalition_size() const { return static_cast<int64_t>(coalition.size()); }
};

enum class OrderingRegimeKind {
    FairOrdering,      // content-agnostic random permutation, no fees
    BuilderPriority,   // priority slot sold by an external builder
    ProposerPriority,  // priority slot sold by the proposer, fees recycled
};

struct OrderingRegime {
    OrderingRegimeKind kind = OrderingRegimeKind::FairOrdering;
    Currency window_delta;       // fair ordering: arrival window (carried, not partitioned yet)
    Currency bid_increment_eps;  // auctions: winner's surplus / minimum outbid step

    static OrderingRegime fair(Currency window = Currency{});
    static OrderingRegime builder_priority(Currency eps);
    static OrderingRegime proposer_priority(Currency eps);

    void validate() const;
};

enum class HonestRule {
    BestEffort,         // participate iff the public conservative payoff bound is >= 0
    AlwaysParticipate,
    Abstain,
};

enum class CoalitionRule {
    Recapture,        // submit whenever at least one honest challenger does
    PriorityCapture,  // recapture plus bidding for the priority slot
    Passive,          // never submit
};

struct StrategyConfig {
    HonestRule honest = HonestRule::BestEffort;
    CoalitionRule coalition = CoalitionRule::Recapture;
};

// Full parameterization of one dispute game. Immutable after validation;
// safe to share across simulation workers.
struct Scenario {
    Population population;
    ProtocolParams params;
    OrderingRegime regime;
    CostSamplingKind cost_sampling = CostSamplingKind::WorstCase;
    uint64_t seed = 0;
    std::optional<StrategyConfig> strategy;  // defaulted per regime when absent

    void validate() const;
    StrategyConfig effective_strategy() const;
};

// Where auction fees end up: an external builder (pure sink) or the proposer
// (the adversary's own pocket, so honest fees paid there offset its loss).
enum class FeeRecipient { None, Builder, Proposer };

// Everything realized by one dispute play-out.
struct DisputeOutcome {
    std::vector<int64_t> realized_order;      // participants in inclusion order
    std::vector<int64_t> winners;             // first effective_m positions
    std::map<int64_t, Currency> utilities;    // signed, one entry per challenger
    std::map<int64_t, Currency> fees_paid;    // nonzero only for auction winners
    FeeRecipient fee_recipient = FeeRecipient::None;
    Currency clearing_fee;                    // market price of the priority slot
    Currency adversary_loss;                  // deposit minus everything the coalition got back
    Currency burned;                          // unpaid remainder of the deposit
    Currency distributed;                     // total paid out to winners
    bool fraud_caught = false;                // false only when nobody participated
    bool noncompetitive = false;              // auction cleared with a single bidder
};

// --- Operations ------------------------------------------------------------

// Number of winners actually included given the policy and the count of valid
// challenges. Never exceeds either.
int64_t effective_m(const ProtocolParams& params, int64_t n_valid);

// Per-winner reward: the paid share of the deposit split equally m ways,
// floored to minor units (the sub-minor remainder joins the burn bucket).
Currency winner_reward(const ProtocolParams& params, int64_t m);

// Fraction of the challenger set that colludes with the proposer.
Rat coalition_fraction(const Population& pop);

// Cost profiles realized for one trial under the scenario's sampling mode.
// UniformUpTo consumes the rng; the other modes are deterministic.
class Rng;
std::vector<CostProfile> realize_costs(const Scenario& scenario, Rng& rng);

} // namespace chalsim
