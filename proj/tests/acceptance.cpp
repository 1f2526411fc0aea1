// Acceptance suite: one verdict line per published criterion, pinned
// tolerances, nonzero exit when any criterion fails. Each criterion prints
// exactly one PASS/FAIL line; supporting analysis lines are indented.
#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <chalsim/analytics.hpp>
#include <chalsim/calibration.hpp>
#include <chalsim/engine.hpp>
#include <chalsim/report_io.hpp>
#include <chalsim/rng.hpp>

using namespace chalsim;

namespace {

// Pinned tolerances and workloads.
constexpr double kSeMultiple = 3.0;        // Monte Carlo means must sit within 3 standard errors
constexpr uint64_t kTrialsPerCell1 = 1000; // criterion 1 grid cells
constexpr uint64_t kTrials2 = 10'000;      // criterion 2
constexpr uint64_t kTrials3 = 100'000;     // criterion 3
constexpr int kScenarios7 = 1000;          // criterion 7 random property scenarios

bool g_all_pass = true;

void verdict(int index, bool pass, const std::string& text) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", index, text.c_str());
    if (!pass) g_all_pass = false;
}

void note(const std::string& text) { std::printf("    %s\n", text.c_str()); }

Scenario make_scenario(int64_t n, std::vector<int64_t> coalition, const char* cb_init,
                       const char* cb_proc, const char* deposit, Rat alpha, Rat eta,
                       WinnerPolicy policy, OrderingRegime regime) {
    Scenario s;
    s.population.n = n;
    s.population.coalition = std::move(coalition);
    s.population.cost_bounds = CostBounds{Currency::parse(cb_init), Currency::parse(cb_proc)};
    s.population.cost_profiles.assign(
        static_cast<size_t>(n), CostProfile{s.population.cost_bounds.init, s.population.cost_bounds.proc});
    s.params.deposit = Currency::parse(deposit);
    s.params.alpha = alpha;
    s.params.eta = eta;
    s.params.policy = policy;
    s.regime = regime;
    s.seed = 0xACC3D7;
    return s;
}

// Criterion 1: under proposer-sold priority with a single winner, the
// coalition captures the slot in every trial; honest challengers are never
// included and their utility is exactly -c_init, with zero variance.
void criterion_1() {
    const std::vector<int64_t> populations = {3, 5, 9};
    const std::vector<int64_t> coalition_sizes = {1, 2};
    const std::vector<Rat> alphas = {Rat(3, 10), Rat::from_int(1)};
    const std::vector<const char*> deposits = {"10", "100"};

    int cells = 0;
    int bad = 0;
    for (int64_t n : populations) {
        for (int64_t a : coalition_sizes) {
            if (2 * a >= n) continue; // not a strict minority: outside the model
            for (const Rat& alpha : alphas) {
                for (const char* deposit : deposits) {
                    std::vector<int64_t> ids;
                    for (int64_t id = 0; id < a; ++id) ids.push_back(id);
                    Scenario s = make_scenario(
                        n, ids, "1", "1", deposit, alpha, Rat(1, 2), WinnerPolicy::single(),
                        OrderingRegime::proposer_priority(Currency::parse("0.001")));
                    const SimulationReport r = estimate_utilities(s, kTrialsPerCell1, 0);
                    ++cells;
                    for (const UtilityEstimate& est : r.estimates) {
                        if (est.coalition) continue;
                        const bool ok = est.exact && est.inclusion_rate.is_zero() &&
                                        est.mean_utility == Rat::from_int(-1);
                        if (!ok) ++bad;
                    }
                }
            }
        }
    }
    char text[160];
    std::snprintf(text, sizeof text,
                  "honest challengers excluded with utility -c_init in every trial "
                  "(%d grid cells x %" PRIu64 " trials, exact)",
                  cells, kTrialsPerCell1);
    verdict(1, bad == 0, text);
}

// Criterion 2: under builder-sold priority the winner's surplus is exactly
// the bid increment, so every honest sample mean obeys
// mean <= inclusion_rate * eps - c_init < 0, as an exact rational inequality.
void criterion_2() {
    const Currency c_init = Currency::parse("0.5"); // >= 0.1 as required
    int checked = 0;
    int bad = 0;
    for (const char* eps_text : {"0.001", "0.01"}) {
        for (int64_t a : {int64_t{0}, int64_t{2}}) {
            std::vector<int64_t> ids;
            for (int64_t id = 0; id < a; ++id) ids.push_back(id);
            Scenario s = make_scenario(5, ids, "0.5", "1", "10", Rat::from_int(1), Rat(1, 2),
                                       WinnerPolicy::single(),
                                       OrderingRegime::builder_priority(Currency::parse(eps_text)));
            const SimulationReport r = estimate_utilities(s, kTrials2, 0);
            const Rat eps = Rat::from_currency(Currency::parse(eps_text));
            for (const UtilityEstimate& est : r.estimates) {
                if (est.coalition) continue;
                ++checked;
                const Rat bound = est.inclusion_rate * eps - Rat::from_currency(c_init);
                if (!(est.mean_utility <= bound) || !bound.is_negative()) ++bad;
            }
        }
    }
    char text[160];
    std::snprintf(text, sizeof text,
                  "honest mean utility <= inclusion_rate*eps - c_init < 0 "
                  "(%d honest series x %" PRIu64 " trials, exact sample means)",
                  checked, kTrials2);
    verdict(2, bad == 0, text);
}

// Criterion 3: fair single-winner lottery, N = 4, alpha = 1, D_p = 10,
// c_proc = 1, c_init = 0.5. Expected honest utility is
// (1/4)(10 - 1) - 0.5 = 1.75; at alpha*D_p = N*c_init + c_proc (alpha = 0.3)
// it is exactly 0. Sample means must land within 3 standard errors.
void criterion_3() {
    bool pass = true;
    struct Case {
        Rat alpha;
        double expectation;
    };
    for (const Case& c : {Case{Rat::from_int(1), 1.75}, Case{Rat(3, 10), 0.0}}) {
        Scenario s = make_scenario(4, {}, "0.5", "1", "10", c.alpha, Rat(1, 2),
                                   WinnerPolicy::single(), OrderingRegime::fair());
        const SimulationReport r = estimate_utilities(s, kTrials3, 0);
        for (const UtilityEstimate& est : r.estimates) {
            const double gap = std::abs(est.mean_utility.to_double() - c.expectation);
            if (!(gap <= kSeMultiple * est.std_error)) pass = false;
        }
    }
    char text[160];
    std::snprintf(text, sizeof text,
                  "fair lottery means within %.0f*SE of 1.75 and of 0 at the break-even share "
                  "(%" PRIu64 " trials)",
                  kSeMultiple, kTrials3);
    verdict(3, pass, text);
}

// Criterion 4: exhaustive full-inclusion grid. Deposit 6930 and per-challenger
// cost 231 make every share and split exact in minor units for N <= 12 and
// alpha on the 0.05 grid, so simulated verdicts must equal the closed forms
// everywhere, and the adversary's loss must equal (1 - phi*alpha) * D_p.
void criterion_4() {
    const Currency deposit = Currency::from_units(6930);
    int points = 0;
    int bad_verdicts = 0;
    int bad_loss = 0;
    for (int64_t n = 3; n <= 12; ++n) {
        for (int64_t a = 0; 2 * a < n; ++a) {
            for (int k = 1; k <= 20; ++k) {
                const Rat alpha(k, 20);
                for (const Rat& eta : {Rat(3, 5), Rat(4, 5)}) {
                    std::vector<int64_t> ids;
                    for (int64_t id = 0; id < a; ++id) ids.push_back(id);
                    Scenario s = make_scenario(n, ids, "115.5", "115.5", "6930", alpha, eta,
                                               WinnerPolicy::non_exclusion(),
                                               OrderingRegime::fair());
                    s.strategy =
                        StrategyConfig{HonestRule::AlwaysParticipate, CoalitionRule::Recapture};
                    const SimulationReport r = estimate_utilities(s, 1, 1);
                    ++points;

                    const FeasibleInterval interval =
                        feasible_interval(n, a, Currency::from_units(231), deposit, eta);
                    const bool inside =
                        interval.alpha_lower <= alpha && alpha <= interval.alpha_upper;
                    if ((r.o1_empirical && r.o2_empirical) != inside) ++bad_verdicts;
                    if (r.o1_empirical != r.analytic.o1_holds) ++bad_verdicts;
                    if (r.o2_empirical != r.analytic.o2_holds) ++bad_verdicts;

                    const Rat expected_loss =
                        (Rat::from_int(1) - Rat(a, n) * alpha) * Rat::from_currency(deposit);
                    if (!(r.adversary_loss_mean == expected_loss)) ++bad_loss;
                }
            }
        }
    }
    char text[160];
    std::snprintf(text, sizeof text,
                  "interval membership == simulated O1/O2 and loss == (1-phi*alpha)*D_p on "
                  "%d/%d exhaustive grid points",
                  points - bad_verdicts - bad_loss, points);
    verdict(4, bad_verdicts == 0 && bad_loss == 0, text);
}

// Criterion 5: deterrence-bound deposit D_p = c*A/(1-eta) = 40 at c = 1,
// A = 4, eta = 0.9. The published claim asks for a nonempty interval at
// N in {9, 40, 400, 4000} and emptiness one micro-unit below the floor at
// the smallest population where the deterrence branch binds.
void criterion_5() {
    const Currency c_tilde = Currency::from_units(1);
    const Rat eta(9, 10);
    const int64_t a = 4;

    bool pass = true;
    std::vector<std::string> analysis;

    const ScaleFreeDeposit floor = scale_free_min_deposit(c_tilde, a, eta);
    if (!(floor.min_deposit == Currency::from_units(40))) {
        pass = false;
        analysis.push_back("deposit floor c*A/(1-eta) expected 40, got " +
                           floor.min_deposit.to_string());
    }

    for (int64_t n : {int64_t{9}, int64_t{40}, int64_t{400}, int64_t{4000}}) {
        const FeasibleInterval i = feasible_interval(n, a, c_tilde, floor.min_deposit, eta);
        if (!i.nonempty) {
            pass = false;
            analysis.push_back(
                "N = " + std::to_string(n) + ": empty; participation needs alpha >= N*c/D_p = " +
                i.alpha_lower.to_decimal_string(6) + " but the share is capped at " +
                i.alpha_upper.to_decimal_string(6) +
                " — a 40-unit deposit cannot cover " + std::to_string(n) +
                " challengers at unit cost, so no payout share works at this scale");
        }
    }

    // One micro-unit below the floor, the bound must fail at the smallest
    // population where the deterrence branch binds (N = 9: (1-eta)*N/A < 1).
    const Currency shaved = floor.min_deposit - Currency::parse("0.000001");
    const FeasibleInterval below = feasible_interval(9, a, c_tilde, shaved, eta);
    if (below.nonempty) {
        pass = false;
        analysis.push_back("interval unexpectedly nonempty at D_p = " + shaved.to_string());
    }

    verdict(5, pass,
            "deterrence-bound deposit of 40 keeps the share interval nonempty at "
            "N in {9, 40, 400, 4000} and fails one micro-unit lower (exact rationals)");
    for (const std::string& line : analysis) note(line);
}

// Criterion 6: the coalition-free ceiling min{1, 2(1-eta)} is trivial at
// eta = 1/2 and becomes binding immediately above it.
void criterion_6() {
    const PhiFreeBound at_half = phi_free_upper_bound(Rat(1, 2));
    const PhiFreeBound above = phi_free_upper_bound(Rat(500'001, 1'000'000));
    const bool pass = !at_half.nontrivial && at_half.bound == Rat::from_int(1) &&
                      above.nontrivial && above.bound == Rat(499'999, 500'000);
    verdict(6, pass,
            "coalition-free share cap is trivial at eta = 0.5 and binding at eta = 0.5 + 1e-6 "
            "(exact)");
}

// --- Criterion 7 support -----------------------------------------------------

Currency random_amount(std::mt19937_64& gen, int64_t max_thousandths) {
    std::uniform_int_distribution<int64_t> dist(0, max_thousandths);
    return Currency::from_minor(dist(gen) * 1'000'000); // three decimal places
}

Scenario random_scenario(std::mt19937_64& gen) {
    std::uniform_int_distribution<int64_t> n_dist(1, 12);
    const int64_t n = n_dist(gen);

    Scenario s;
    s.population.n = n;
    std::uniform_int_distribution<int64_t> a_dist(0, (n - 1) / 2);
    const int64_t a = a_dist(gen);
    // Random distinct ids: shuffle and take the first a, then sort.
    std::vector<int64_t> ids(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = i;
    std::shuffle(ids.begin(), ids.end(), gen);
    ids.resize(static_cast<size_t>(a));
    std::sort(ids.begin(), ids.end());
    s.population.coalition = std::move(ids);

    s.population.cost_bounds = CostBounds{random_amount(gen, 3000), random_amount(gen, 3000)};

    std::uniform_int_distribution<int> sampling_dist(0, 2);
    switch (sampling_dist(gen)) {
        case 0: s.cost_sampling = CostSamplingKind::WorstCase; break;
        case 1: s.cost_sampling = CostSamplingKind::UniformUpTo; break;
        default: s.cost_sampling = CostSamplingKind::Fixed; break;
    }
    s.population.cost_profiles.clear();
    for (int64_t i = 0; i < n; ++i) {
        if (s.cost_sampling == CostSamplingKind::Fixed) {
            std::uniform_int_distribution<int64_t> init_dist(
                0, s.population.cost_bounds.init.minor());
            std::uniform_int_distribution<int64_t> proc_dist(
                0, s.population.cost_bounds.proc.minor());
            s.population.cost_profiles.push_back(CostProfile{
                Currency::from_minor(init_dist(gen)), Currency::from_minor(proc_dist(gen))});
        } else {
            s.population.cost_profiles.push_back(
                CostProfile{s.population.cost_bounds.init, s.population.cost_bounds.proc});
        }
    }

    std::uniform_int_distribution<int64_t> deposit_dist(1, 1'000'000);
    s.params.deposit = Currency::from_minor(deposit_dist(gen) * 1'000'000);
    std::uniform_int_distribution<int64_t> alpha_dist(1, 100);
    s.params.alpha = Rat(alpha_dist(gen), 100);
    std::uniform_int_distribution<int64_t> eta_dist(1, 99);
    s.params.eta = Rat(eta_dist(gen), 100);

    std::uniform_int_distribution<int> policy_dist(0, 2);
    switch (policy_dist(gen)) {
        case 0: s.params.policy = WinnerPolicy::single(); break;
        case 1: s.params.policy = WinnerPolicy::non_exclusion(); break;
        default: {
            std::uniform_int_distribution<int64_t> cap_dist(1, n);
            s.params.policy = WinnerPolicy::capped(cap_dist(gen));
            break;
        }
    }

    std::uniform_int_distribution<int> regime_dist(0, 2);
    std::uniform_int_distribution<int64_t> eps_dist(1, 100);
    const Currency eps = Currency::from_minor(eps_dist(gen) * 1'000'000);
    switch (regime_dist(gen)) {
        case 0: s.regime = OrderingRegime::fair(); break;
        case 1: s.regime = OrderingRegime::builder_priority(eps); break;
        default: s.regime = OrderingRegime::proposer_priority(eps); break;
    }

    std::uniform_int_distribution<int> strategy_dist(0, 9);
    const int strat = strategy_dist(gen);
    if (strat < 9) {
        StrategyConfig cfg;
        cfg.honest = static_cast<HonestRule>(strat % 3);
        cfg.coalition = static_cast<CoalitionRule>(strat / 3);
        if (cfg.coalition == CoalitionRule::PriorityCapture &&
            s.regime.kind == OrderingRegimeKind::FairOrdering)
            cfg.coalition = CoalitionRule::Recapture; // no slot to buy under fair ordering
        s.strategy = cfg;
    }

    std::uniform_int_distribution<uint64_t> seed_dist(0, 1'000'000'000);
    s.seed = seed_dist(gen);
    s.validate();
    return s;
}

// Exact settlement audit for one dispute play-out.
bool conservation_holds(const Scenario& s, const DisputeOutcome& o,
                        const std::vector<CostProfile>& costs) {
    if (!o.fraud_caught) {
        if (!o.adversary_loss.is_zero() || !o.distributed.is_zero() || !o.burned.is_zero())
            return false;
        for (const auto& [id, u] : o.utilities) {
            (void)id;
            if (!u.is_zero()) return false;
        }
        return true;
    }
    if (!(o.distributed + o.burned == s.params.deposit)) return false;
    if (o.winners.empty()) return false;
    const Currency reward =
        Currency::from_minor(o.distributed.minor() / static_cast<int64_t>(o.winners.size()));

    std::vector<bool> is_winner(static_cast<size_t>(s.population.n), false);
    for (int64_t id : o.winners) is_winner[static_cast<size_t>(id)] = true;
    std::vector<bool> participated(static_cast<size_t>(s.population.n), false);
    for (int64_t id : o.realized_order) participated[static_cast<size_t>(id)] = true;

    for (int64_t id = 0; id < s.population.n; ++id) {
        Currency expected;
        if (participated[static_cast<size_t>(id)]) {
            expected = -costs[static_cast<size_t>(id)].init;
            if (is_winner[static_cast<size_t>(id)]) {
                expected += reward - costs[static_cast<size_t>(id)].proc;
                auto fee = o.fees_paid.find(id);
                if (fee != o.fees_paid.end()) expected -= fee->second;
            }
        }
        if (!(o.utilities.at(id) == expected)) return false;
    }
    return o.adversary_loss == recompute_adversary_loss(o, s.population);
}

// Criterion 7: randomized property suite. Every settled dispute must conserve
// value exactly, and simulation reports must be byte-identical between a
// single-threaded and an eight-way run of the same seed.
void criterion_7() {
    std::mt19937_64 gen(0xACC0157);
    int conservation_failures = 0;
    int determinism_failures = 0;

    for (int i = 0; i < kScenarios7; ++i) {
        const Scenario s = random_scenario(gen);

        for (uint64_t t = 0; t < 2; ++t) {
            Rng cost_stream(trial_seed(s.seed, t));
            const std::vector<CostProfile> costs = realize_costs(s, cost_stream);
            Rng replay(trial_seed(s.seed, t));
            const DisputeOutcome outcome = run_dispute(s, replay);
            if (!conservation_holds(s, outcome, costs)) ++conservation_failures;
        }

        const SimulationReport narrow = estimate_utilities(s, 40, 1);
        const SimulationReport wide = estimate_utilities(s, 40, 8);
        if (render_simulation_json(s, narrow) != render_simulation_json(s, wide))
            ++determinism_failures;
    }

    char text[200];
    std::snprintf(text, sizeof text,
                  "%d random scenarios: settlement conserves the deposit exactly and "
                  "1-worker vs 8-worker reports are byte-identical",
                  kScenarios7);
    verdict(7, conservation_failures == 0 && determinism_failures == 0, text);
    if (conservation_failures > 0)
        note("conservation violations: " + std::to_string(conservation_failures));
    if (determinism_failures > 0)
        note("report mismatches: " + std::to_string(determinism_failures));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    return g_all_pass ? 0 : 1;
}
