#pragma once

#include <cstdint>
#include <optional>

#include "chalsim/currency.hpp"
#include "chalsim/rational.hpp"

namespace chalsim {

// Which constraint pins the top of the feasible payout-share interval: the
// hard cap alpha = 1, or the deterrence requirement (1-eta)/phi below it.
enum class CalibrationRegime { ScaleLimitedAlphaOne, ScaleFreeDeterrenceBound };

// Closed-form feasibility verdict for the payout share alpha under full
// inclusion. Bounds are exact rationals so boundary cases (lower == upper)
// classify as nonempty, never as floating-point noise.
struct FeasibleInterval {
    Rat alpha_lower;
    Rat alpha_upper;
    bool nonempty = false;
    CalibrationRegime regime = CalibrationRegime::ScaleLimitedAlphaOne;
};

struct PhiFreeBound {
    Rat bound;              // coalition-size-free cap on alpha
    bool nontrivial = false; // true exactly when the cap is below 1
};

struct ScaleFreeDeposit {
    Currency min_deposit;                    // smallest representable deposit meeting the bound
    bool advisory_honest_population = false; // no coalition: deterrence is vacuous, bound is 0
};

struct GoalCheck {
    bool o1_holds = false; // every honest challenger breaks even ex ante
    bool o2_holds = false; // the adversary loses at least eta * deposit
};

// Smallest payout share that still covers a winner's worst-case cost and fee:
// m * (c_tilde + f) / d_p. May exceed 1, which signals infeasibility.
Rat alpha_lower_bound(int64_t m, Currency f, Currency c_tilde, Currency d_p);

// Largest payout share that keeps the adversary's loss at eta * deposit when
// a fraction phi of the payout flows back to the coalition: min(1, (1-eta)/phi),
// with the whole deposit payable when nothing flows back (phi = 0).
Rat alpha_upper_bound(const Rat& eta, const Rat& phi);

// Coalition-size-free cap: any minority coalition has phi < 1/2, so
// alpha <= min(1, 2(1-eta)). Binds (is below 1) exactly when eta > 1/2.
PhiFreeBound phi_free_upper_bound(const Rat& eta);

// Minimum total payout alpha * d_p that sustains best-effort participation
// under fair ordering with a single winner: n * c_init_bound + c_proc_bound.
Currency fair_single_winner_min_payout(int64_t n, Currency c_init_bound, Currency c_proc_bound);

// Feasible alpha interval under full inclusion with zero fees:
// [n * c_tilde / d_p, alpha_upper_bound]. phi defaults to the coalition share
// a/n; pass an override to model a different recapture fraction.
FeasibleInterval feasible_interval(int64_t n, int64_t a, Currency c_tilde, Currency d_p,
                                   const Rat& eta,
                                   const std::optional<Rat>& phi_override = std::nullopt);

// Smallest deposit whose feasible interval stays nonempty at every population
// size while the deterrence bound binds: c_tilde * a / (1 - eta), rounded up
// to a representable amount. A population with no coalition needs none.
ScaleFreeDeposit scale_free_min_deposit(Currency c_tilde, int64_t a, const Rat& eta);

// Evaluates both design goals for a concrete alpha: participation coverage
// against the lower bound at capacity m and fee f, deterrence against the
// upper bound at coalition share a/n.
GoalCheck check_goals(const Rat& alpha, int64_t m, Currency f, Currency c_tilde, Currency d_p,
                      const Rat& eta, int64_t n, int64_t a);

} // namespace chalsim
