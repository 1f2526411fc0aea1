#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chalsim/calibration.hpp"
#include "chalsim/currency.hpp"
#include "chalsim/model.hpp"
#include "chalsim/rational.hpp"

namespace chalsim {

// Monte Carlo summary for one challenger. The mean and inclusion rate are
// exact rationals built from integer accumulators; the error terms are the
// usual normal-approximation statistics derived from the same integers, so a
// report is bit-stable for a given (scenario, trials) no matter how the work
// was split across threads.
struct UtilityEstimate {
    int64_t challenger = 0;
    bool coalition = false;
    uint64_t trials = 0;
    Rat mean_utility;
    Rat inclusion_rate;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool exact = false; // every trial produced the same utility; the error terms are exactly zero
};

// Full result of a Monte Carlo run over one scenario.
struct SimulationReport {
    uint64_t trials = 0;
    std::vector<UtilityEstimate> estimates; // ascending challenger id
    Rat adversary_loss_mean;
    double adversary_loss_se = 0.0;
    bool adversary_loss_exact = false;
    Rat fraud_caught_rate;
    bool o1_empirical = false; // every honest mean utility is non-negative
    bool o2_empirical = false; // mean adversary loss reaches eta * deposit
    GoalCheck analytic;        // closed-form verdicts at announced capacity, zero fees
};

// One piece of evidence inside a theorem verification.
struct TheoremCheck {
    std::string name;
    std::string expected;
    std::string observed;
    std::string tolerance;
    bool pass = false;
};

struct TheoremReport {
    std::string theorem_id;
    bool pass = false;
    uint64_t trials = 0; // per cell, where simulation was involved
    std::vector<TheoremCheck> checks;
};

struct VerifyConfig {
    std::optional<uint64_t> trials; // override the per-theorem default
    unsigned workers = 0;           // 0 = auto
};

// The six verifiable results the harness knows how to cross-check.
std::vector<std::string> known_theorems();

enum class SweepAxis { N, A, Alpha, Deposit, Eta, CTilde };

SweepAxis parse_sweep_axis(const std::string& name); // errc::invalid_argument on unknown
std::string sweep_axis_name(SweepAxis axis);

// One sweep cell. Invalid parameter combinations keep their row (valid =
// false, error filled) so downstream plots can show the validity boundary.
struct SweepRow {
    std::string value;
    bool valid = false;
    std::string error;
    int64_t n = 0;
    int64_t a = 0;
    Rat alpha;
    Currency deposit;
    Rat eta;
    Currency c_tilde;
    Rat alpha_lower;
    Rat alpha_upper;
    bool interval_nonempty = false;
    CalibrationRegime regime = CalibrationRegime::ScaleLimitedAlphaOne;
    bool o1_analytic = false;
    bool o2_analytic = false;
    bool o1_empirical = false;
    bool o2_empirical = false;
    Rat min_honest_mean_utility;
    Rat adversary_loss_mean;
    Rat fraud_caught_rate;
    Currency required_single_winner_payout;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::N;
    uint64_t trials = 0;
    std::vector<SweepRow> rows;
};

// Estimates per-challenger expected utility and the adversary's expected loss
// over independent dispute trials. Trials fan out across `workers` threads
// (0 = auto); every trial draws its own rng stream from (scenario.seed,
// trial index), and accumulation is exact integer arithmetic, so the result
// does not depend on the thread count.
SimulationReport estimate_utilities(const Scenario& scenario, uint64_t trials, unsigned workers = 0);

// Probe for deterministic scenarios: runs two trials on distinct streams and
// compares settled outcomes. Deterministic scenarios need one trial; anything
// else gets the stochastic default of 10^4.
uint64_t default_trials(const Scenario& scenario);

// Cross-checks one named result against its closed form, by simulation,
// exhaustive enumeration, or exact arithmetic as appropriate.
TheoremReport verify_theorem(const std::string& theorem_id, const VerifyConfig& config = {});

// Re-runs calibration and simulation while varying one parameter, holding the
// base scenario fixed otherwise.
SweepTable sweep(SweepAxis axis, const std::vector<std::string>& values, const Scenario& base,
                 uint64_t trials, unsigned workers = 0);

} // namespace chalsim
