#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include <chalsim/engine.hpp>
#include <chalsim/ordering.hpp>

using namespace chalsim;

namespace {

Scenario make_scenario(int64_t n, std::vector<int64_t> coalition, const char* cb_init,
                       const char* cb_proc, const char* deposit, Rat alpha,
                       WinnerPolicy policy = WinnerPolicy::single(),
                       OrderingRegime regime = OrderingRegime::fair()) {
    Scenario s;
    s.population.n = n;
    s.population.coalition = std::move(coalition);
    s.population.cost_bounds = CostBounds{Currency::parse(cb_init), Currency::parse(cb_proc)};
    s.population.cost_profiles.assign(
        static_cast<size_t>(n), CostProfile{s.population.cost_bounds.init, s.population.cost_bounds.proc});
    s.params.deposit = Currency::parse(deposit);
    s.params.alpha = alpha;
    s.params.eta = Rat(4, 5);
    s.params.policy = policy;
    s.regime = regime;
    s.seed = 31;
    return s;
}

// Settlement identity: on a caught fraud, the slashed deposit splits exactly
// into the distributed rewards plus the burn bucket, and each participant's
// utility decomposes into reward/costs/fee with nothing unaccounted.
void check_conservation(const Scenario& s, const DisputeOutcome& o,
                        const std::vector<CostProfile>& costs) {
    if (!o.fraud_caught) {
        CHECK(o.adversary_loss.is_zero());
        CHECK(o.distributed.is_zero());
        CHECK(o.burned.is_zero());
        for (const auto& [id, u] : o.utilities) CHECK(u.is_zero());
        return;
    }
    CHECK(o.distributed + o.burned == s.params.deposit);
    REQUIRE(!o.winners.empty());
    const Currency reward = Currency::from_minor(o.distributed.minor() /
                                                 static_cast<int64_t>(o.winners.size()));

    Currency fees_total;
    for (const auto& [payer, fee] : o.fees_paid) {
        (void)payer;
        fees_total += fee;
    }

    // Rebuild every utility from the books.
    std::vector<bool> is_winner(static_cast<size_t>(s.population.n), false);
    for (int64_t id : o.winners) is_winner[static_cast<size_t>(id)] = true;
    std::vector<bool> participated(static_cast<size_t>(s.population.n), false);
    for (int64_t id : o.realized_order) participated[static_cast<size_t>(id)] = true;

    Currency rewards_out;
    for (int64_t id = 0; id < s.population.n; ++id) {
        Currency expected;
        if (participated[static_cast<size_t>(id)]) {
            expected = -costs[static_cast<size_t>(id)].init;
            if (is_winner[static_cast<size_t>(id)]) {
                expected += reward - costs[static_cast<size_t>(id)].proc;
                auto fee = o.fees_paid.find(id);
                if (fee != o.fees_paid.end()) expected -= fee->second;
                rewards_out += reward;
            }
        }
        CHECK(o.utilities.at(id) == expected);
    }
    CHECK(rewards_out == o.distributed);
    CHECK(o.adversary_loss == recompute_adversary_loss(o, s.population));
    (void)fees_total;
}

} // namespace

TEST_CASE("announced capacity per policy") {
    Scenario s = make_scenario(10, {}, "1", "1", "100", Rat(1, 2));
    CHECK(announced_capacity(s) == 1);
    s.params.policy = WinnerPolicy::non_exclusion();
    CHECK(announced_capacity(s) == 10);
    s.params.policy = WinnerPolicy::capped(4);
    CHECK(announced_capacity(s) == 4);
}

TEST_CASE("best-effort participation follows the conservative bound") {
    // Single challenger, single winner: bound = 1*10/1 - 2 = 8 >= 0.
    Scenario s = make_scenario(1, {}, "1", "1", "10", Rat::from_int(1));
    auto d = decide_participation(s, Currency{});
    REQUIRE(d.size() == 1);
    CHECK(d[0].participates);
    CHECK(d[0].conservative_bound == Currency::from_units(8));

    // Full inclusion splits 0.1*10 ten ways: 0.1 each against cost 2.
    Scenario tight = make_scenario(10, {}, "1", "1", "10", Rat(1, 10),
                                   WinnerPolicy::non_exclusion());
    d = decide_participation(tight, Currency{});
    for (const auto& decision : d) {
        CHECK_FALSE(decision.participates);
        CHECK(decision.conservative_bound == Currency::parse("-1.9"));
    }
}

TEST_CASE("the fee ceiling tightens the participation bound") {
    Scenario s = make_scenario(1, {}, "1", "1", "10", Rat::from_int(1));
    auto d = decide_participation(s, Currency::from_units(8));
    CHECK(d[0].participates); // bound exactly 0 still participates
    d = decide_participation(s, Currency::parse("8.000000001"));
    CHECK_FALSE(d[0].participates);
    CHECK_THROWS_AS(decide_participation(s, Currency::parse("-1")), Error);
}

TEST_CASE("the coalition abstains when every honest challenger does") {
    Scenario s = make_scenario(10, {0, 1, 2}, "1", "1", "10", Rat(1, 10),
                               WinnerPolicy::non_exclusion());
    auto d = decide_participation(s, Currency{});
    for (const auto& decision : d) CHECK_FALSE(decision.participates);

    // Force honest participation back on: the coalition follows.
    s.strategy = StrategyConfig{HonestRule::AlwaysParticipate, CoalitionRule::Recapture};
    d = decide_participation(s, Currency{});
    for (const auto& decision : d) CHECK(decision.participates);

    // A passive coalition stays out regardless.
    s.strategy = StrategyConfig{HonestRule::AlwaysParticipate, CoalitionRule::Passive};
    d = decide_participation(s, Currency{});
    for (const auto& decision : d)
        CHECK(decision.participates == !s.population.is_coalition(decision.challenger));
}

TEST_CASE("a coalition-only population never participates") {
    // A degenerate check through the honest-presence gate: with n=1 and no
    // honest abstention the coalition condition needs at least one honest id.
    Scenario s = make_scenario(3, {0}, "1", "1", "10", Rat::from_int(1));
    s.strategy = StrategyConfig{HonestRule::Abstain, CoalitionRule::Recapture};
    auto d = decide_participation(s, Currency{});
    for (const auto& decision : d) CHECK_FALSE(decision.participates);
}

TEST_CASE("proposer-priority single-winner dispute settles deterministically") {
    // Coalition takes the slot; every honest challenger eats c_init exactly.
    Scenario s = make_scenario(3, {0}, "1", "1", "10", Rat(1, 2),
                               WinnerPolicy::single(),
                               OrderingRegime::proposer_priority(Currency::parse("0.001")));
    for (uint64_t t = 0; t < 200; ++t) {
        Rng rng(trial_seed(s.seed, t));
        const auto costs = realize_costs(s, rng);
        Rng replay(trial_seed(s.seed, t));
        const DisputeOutcome o = run_dispute(s, replay);
        REQUIRE(o.fraud_caught);
        REQUIRE(o.winners.size() == 1);
        CHECK(s.population.is_coalition(o.winners[0]));
        CHECK(o.utilities.at(1) == Currency::parse("-1"));
        CHECK(o.utilities.at(2) == Currency::parse("-1"));
        // alpha = 1/2: the coalition recaptures half of the slashed deposit.
        CHECK(o.adversary_loss == Currency::from_units(5));
        check_conservation(s, o, costs);
    }
}

TEST_CASE("non-exclusion worst case settles to the closed-form books") {
    // Every winner nets 0.8*100/10 - 5 = 3; loss = (1 - 0.4*0.8)*100 = 68.
    Scenario s = make_scenario(10, {0, 1, 2, 3}, "2.5", "2.5", "100", Rat(4, 5),
                               WinnerPolicy::non_exclusion());
    Rng rng(trial_seed(s.seed, 0));
    const auto costs = realize_costs(s, rng);
    Rng replay(trial_seed(s.seed, 0));
    const DisputeOutcome o = run_dispute(s, replay);
    REQUIRE(o.fraud_caught);
    CHECK(o.winners.size() == 10);
    for (const auto& [id, u] : o.utilities) {
        (void)id;
        CHECK(u == Currency::from_units(3));
    }
    CHECK(o.adversary_loss == Currency::from_units(68));
    CHECK(o.distributed == Currency::from_units(80));
    CHECK(o.burned == Currency::from_units(20));
    check_conservation(s, o, costs);
}

TEST_CASE("adversary loss is the whole deposit without a coalition") {
    Scenario s = make_scenario(4, {}, "0.5", "1", "10", Rat::from_int(1));
    Rng rng(trial_seed(s.seed, 3));
    const DisputeOutcome o = run_dispute(s, rng);
    REQUIRE(o.fraud_caught);
    CHECK(o.adversary_loss == Currency::from_units(10));
}

TEST_CASE("full payout to a coalition winner erases the loss") {
    Scenario s = make_scenario(3, {0}, "0.5", "1", "10", Rat::from_int(1),
                               WinnerPolicy::single(),
                               OrderingRegime::proposer_priority(Currency::parse("0.001")));
    Rng rng(trial_seed(s.seed, 0));
    const DisputeOutcome o = run_dispute(s, rng);
    REQUIRE(o.fraud_caught);
    REQUIRE(o.winners.size() == 1);
    CHECK(s.population.is_coalition(o.winners[0]));
    // alpha = 1 and the only winner colludes: everything slashed returns.
    CHECK(o.adversary_loss.is_zero());
}

TEST_CASE("honest fees in a proposer auction flow back to the adversary") {
    // No coalition bidders: an honest winner pays the proposer, reducing the
    // adversary's loss below the deposit.
    Scenario s = make_scenario(3, {}, "0.5", "1", "10", Rat::from_int(1),
                               WinnerPolicy::single(),
                               OrderingRegime::proposer_priority(Currency::parse("0.001")));
    Rng rng(trial_seed(s.seed, 1));
    const auto costs = realize_costs(s, rng);
    Rng replay(trial_seed(s.seed, 1));
    const DisputeOutcome o = run_dispute(s, replay);
    REQUIRE(o.fraud_caught);
    CHECK(o.fee_recipient == FeeRecipient::Proposer);
    const Currency fee = o.fees_paid.at(o.winners[0]);
    CHECK(fee == Currency::parse("8.999")); // value 9 minus eps
    CHECK(o.adversary_loss == Currency::from_units(10) - fee);
    check_conservation(s, o, costs);
}

TEST_CASE("builder fees never reduce the adversary loss") {
    Scenario s = make_scenario(3, {}, "0.5", "1", "10", Rat::from_int(1),
                               WinnerPolicy::single(),
                               OrderingRegime::builder_priority(Currency::parse("0.001")));
    Rng rng(trial_seed(s.seed, 1));
    const DisputeOutcome o = run_dispute(s, rng);
    REQUIRE(o.fraud_caught);
    CHECK(o.fee_recipient == FeeRecipient::Builder);
    CHECK(o.adversary_loss == Currency::from_units(10));
}

TEST_CASE("zero participation lets the fraud stand") {
    Scenario s = make_scenario(5, {0, 1}, "1", "1", "1000000", Rat(1, 1000000),
                               WinnerPolicy::non_exclusion());
    // Share = 10^6 * 10^-6 / 5 = 0.2 against cost bound 2: everyone abstains.
    Rng rng(trial_seed(s.seed, 0));
    const DisputeOutcome o = run_dispute(s, rng);
    CHECK_FALSE(o.fraud_caught);
    CHECK(o.winners.empty());
    CHECK(o.adversary_loss.is_zero());
    CHECK(o.distributed.is_zero());
    CHECK(o.burned.is_zero());
    for (const auto& [id, u] : o.utilities) {
        (void)id;
        CHECK(u.is_zero());
    }
}

TEST_CASE("capped policy includes exactly the first m positions") {
    Scenario s = make_scenario(6, {}, "0.1", "0.1", "60", Rat::from_int(1),
                               WinnerPolicy::capped(2));
    Rng rng(trial_seed(s.seed, 5));
    const DisputeOutcome o = run_dispute(s, rng);
    REQUIRE(o.fraud_caught);
    CHECK(o.realized_order.size() == 6);
    REQUIRE(o.winners.size() == 2);
    CHECK(o.winners[0] == o.realized_order[0]);
    CHECK(o.winners[1] == o.realized_order[1]);
    // 30 each to the two winners; nothing burns at alpha = 1 and even split.
    CHECK(o.distributed == Currency::from_units(60));
    CHECK(o.burned.is_zero());
    for (int64_t id : o.winners)
        CHECK(o.utilities.at(id) == Currency::parse("29.8"));
}

TEST_CASE("adversary loss is non-increasing in alpha and coalition size") {
    const StrategyConfig full{HonestRule::AlwaysParticipate, CoalitionRule::Recapture};
    auto loss_at = [&](int64_t a, const Rat& alpha) {
        Scenario s = make_scenario(10, {}, "1", "1", "100", alpha, WinnerPolicy::non_exclusion());
        for (int64_t id = 0; id < a; ++id) s.population.coalition.push_back(id);
        s.strategy = full;
        Rng rng(trial_seed(s.seed, 0));
        return run_dispute(s, rng).adversary_loss;
    };

    for (int64_t a = 0; a <= 4; ++a) {
        Currency previous = loss_at(a, Rat(1, 10));
        for (int k = 2; k <= 10; ++k) {
            const Currency next = loss_at(a, Rat(k, 10));
            CHECK(next <= previous);
            previous = next;
        }
    }
    for (const Rat alpha : {Rat(1, 4), Rat(1, 2), Rat::from_int(1)}) {
        Currency previous = loss_at(0, alpha);
        for (int64_t a = 1; a <= 4; ++a) {
            const Currency next = loss_at(a, alpha);
            CHECK(next <= previous);
            previous = next;
        }
    }
}

TEST_CASE("settlement conserves value across regimes and policies") {
    const std::vector<OrderingRegime> regimes = {
        OrderingRegime::fair(), OrderingRegime::builder_priority(Currency::parse("0.01")),
        OrderingRegime::proposer_priority(Currency::parse("0.01"))};
    const std::vector<WinnerPolicy> policies = {WinnerPolicy::single(),
                                                WinnerPolicy::non_exclusion(),
                                                WinnerPolicy::capped(3)};
    for (const auto& regime : regimes) {
        for (const auto& policy : policies) {
            Scenario s = make_scenario(7, {1, 4}, "0.5", "1.5", "33.333333333", Rat(3, 4), policy,
                                       regime);
            s.cost_sampling = CostSamplingKind::UniformUpTo;
            for (uint64_t t = 0; t < 50; ++t) {
                Rng costs_rng(trial_seed(s.seed, t));
                const auto costs = realize_costs(s, costs_rng);
                Rng replay(trial_seed(s.seed, t));
                const DisputeOutcome o = run_dispute(s, replay);
                check_conservation(s, o, costs);
            }
        }
    }
}
