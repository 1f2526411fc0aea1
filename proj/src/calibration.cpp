#include "chalsim/calibration.hpp"

#include "chalsim/error.hpp"

namespace chalsim {

namespace {

const Rat kZero = Rat::from_int(0);
const Rat kOne = Rat::from_int(1);

void require_eta(const Rat& eta) {
    if (!(eta > kZero) || !(eta < kOne))
        fail(errc::invalid_argument, "eta must lie in (0, 1), got " + eta.to_decimal_string());
}

} // namespace

Rat alpha_lower_bound(int64_t m, Currency f, Currency c_tilde, Currency d_p) {
    if (m < 1) fail(errc::invalid_argument, "capacity must be at least 1");
    if (f.is_negative()) fail(errc::invalid_argument, "fee must be non-negative");
    if (c_tilde.is_negative()) fail(errc::invalid_argument, "cost bound must be non-negative");
    if (!(d_p > Currency{})) fail(errc::division_by_zero, "deposit must be positive");
    return Rat(m, 1) * Rat::from_currency(f + c_tilde) / Rat::from_currency(d_p);
}

Rat alpha_upper_bound(const Rat& eta, const Rat& phi) {
    require_eta(eta);
    if (phi.is_negative() || phi > kOne)
        fail(errc::invalid_argument, "recapture fraction must lie in [0, 1]");
    if (phi.is_zero()) return kOne; // nothing flows back; the whole deposit may be paid
    return min(kOne, (kOne - eta) / phi);
}

PhiFreeBound phi_free_upper_bound(const Rat& eta) {
    require_eta(eta);
    PhiFreeBound out;
    out.bound = min(kOne, Rat(2, 1) * (kOne - eta));
    out.nontrivial = eta > Rat(1, 2);
    return out;
}

Currency fair_single_winner_min_payout(int64_t n, Currency c_init_bound, Currency c_proc_bound) {
    if (n < 1) fail(errc::invalid_argument, "population needs at least one challenger");
    if (c_init_bound.is_negative() || c_proc_bound.is_negative())
        fail(errc::invalid_argument, "cost bounds must be non-negative");
    return c_init_bound.scaled(n) + c_proc_bound;
}

FeasibleInterval feasible_interval(int64_t n, int64_t a, Currency c_tilde, Currency d_p,
                                   const Rat& eta, const std::optional<Rat>& phi_override) {
    if (n < 1) fail(errc::invalid_population, "population needs at least one challenger");
    if (a < 0 || 2 * a >= n)
        fail(errc::invalid_population, "coalition of " + std::to_string(a) +
                                           " is not a strict minority of " + std::to_string(n));
    const Rat phi = phi_override ? *phi_override : Rat(a, n);

    FeasibleInterval out;
    out.alpha_lower = alpha_lower_bound(n, Currency{}, c_tilde, d_p);
    out.alpha_upper = alpha_upper_bound(eta, phi);
    out.nonempty = out.alpha_lower <= out.alpha_upper;
    // The cap alpha = 1 is the binding constraint whenever the deterrence
    // ratio sits at or above it.
    const bool cap_binds = phi.is_zero() || (kOne - eta) / phi >= kOne;
    out.regime = cap_binds ? CalibrationRegime::ScaleLimitedAlphaOne
                           : CalibrationRegime::ScaleFreeDeterrenceBound;
    return out;
}

ScaleFreeDeposit scale_free_min_deposit(Currency c_tilde, int64_t a, const Rat& eta) {
    require_eta(eta);
    if (a < 0) fail(errc::invalid_argument, "coalition size must be non-negative");
    if (c_tilde.is_negative()) fail(errc::invalid_argument, "cost bound must be non-negative");

    ScaleFreeDeposit out;
    if (a == 0) {
        out.advisory_honest_population = true; // no recapture; any positive deposit deters
        return out;
    }
    const Rat bound = Rat::from_currency(c_tilde) * Rat(a, 1) / (kOne - eta);
    // Round up to the next representable amount so the returned deposit always
    // satisfies the bound.
    int64_t floor_minor = bound.mul_floor(Currency::kScale, 1);
    if (!(Rat(floor_minor, Currency::kScale) == bound)) floor_minor += 1;
    out.min_deposit = Currency::from_minor(floor_minor);
    return out;
}

GoalCheck check_goals(const Rat& alpha, int64_t m, Currency f, Currency c_tilde, Currency d_p,
                      const Rat& eta, int64_t n, int64_t a) {
    if (n < 1) fail(errc::invalid_population, "population needs at least one challenger");
    if (a < 0 || 2 * a >= n)
        fail(errc::invalid_population, "coalition of " + std::to_string(a) +
                                           " is not a strict minority of " + std::to_string(n));
    GoalCheck out;
    out.o1_holds = alpha >= alpha_lower_bound(m, f, c_tilde, d_p);
    out.o2_holds = alpha <= alpha_upper_bound(eta, Rat(a, n));
    return out;
}

} // namespace chalsim
