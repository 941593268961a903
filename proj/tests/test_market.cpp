#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "riskeq/errors.hpp"
#include "riskeq/market.hpp"
#include "riskeq/rng.hpp"

using namespace riskeq;

namespace {

Market arrow2(std::vector<double> endowment = {0.0, 0.0}, double wealth = 1.0) {
    return Market({{1.0, 0.0}, {0.0, 1.0}}, {0.5, 0.5}, std::move(endowment),
                  wealth);
}

Market bond3(double wealth = 2.0) {
    return Market({{1.0, 1.0, 1.0}}, {1.0}, {0.0, 0.0, 0.0}, wealth, 0);
}

}  // namespace

TEST_CASE("complete two-state market is arbitrage-free with unique prices") {
    const ArbitrageReport report = check_arbitrage(arrow2());
    CHECK(report.arbitrage_free);
    REQUIRE(report.certificate.has_value());
    CHECK(report.certificate->state_prices[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(report.certificate->state_prices[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(report.certificate->strictness == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(report.certificate->residual <= 1e-7);
}

TEST_CASE("negatively priced bond is an arbitrage") {
    const Market m({{1.0, 1.0}}, {-1.0}, {1.0, 1.0}, 1.0, 0);
    const ArbitrageReport report = check_arbitrage(m);
    CHECK_FALSE(report.arbitrage_free);
    REQUIRE(report.witness.has_value());
    CHECK(oracle::is_arbitrage_portfolio(m, report.witness->portfolio, 1e-9));
    CHECK(report.witness->portfolio[0] > 0.0);  // long the free money
}

TEST_CASE("overpriced bond against two Arrow legs is an arbitrage") {
    const Market m({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {0.5, 0.5, 1.2},
                   {0.0, 0.0}, 1.0, 2);
    const ArbitrageReport report = check_arbitrage(m);
    CHECK_FALSE(report.arbitrage_free);
    REQUIRE(report.witness.has_value());
    CHECK(oracle::is_arbitrage_portfolio(m, report.witness->portfolio, 1e-9));

    // the integer grid finds one too, e.g. long both legs and short the bond
    const auto grid = oracle::grid_arbitrage_search(m, 3);
    REQUIRE(grid.has_value());
    CHECK(oracle::is_arbitrage_portfolio(m, *grid, 1e-9));
}

TEST_CASE("verdicts match the integer-grid search on seeded markets") {
    Rng rng(3030);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.index(3);
        const std::size_t j = 2 + rng.index(2);
        const Market clean = oracle::random_arbitrage_free_market(rng, n, j);
        const ArbitrageReport clean_report = check_arbitrage(clean);
        CHECK(clean_report.arbitrage_free);
        CHECK_FALSE(oracle::grid_arbitrage_search(clean, 2).has_value());
        REQUIRE(clean_report.certificate.has_value());
        CHECK(clean_report.certificate->residual <= 1e-7);
        CHECK(clean_report.certificate->strictness > 0.0);

        const Market planted = oracle::random_arbitrage_market(rng, n);
        const ArbitrageReport bad_report = check_arbitrage(planted);
        CHECK_FALSE(bad_report.arbitrage_free);
        CHECK(oracle::grid_arbitrage_search(planted, 2).has_value());
        REQUIRE(bad_report.witness.has_value());
        CHECK(oracle::is_arbitrage_portfolio(planted, bad_report.witness->portfolio,
                                             1e-9));
    }
}

TEST_CASE("valuation bound on fixed targets") {
    // target equal to the endowment prices the zero claim
    const Market owning = arrow2({0.5, 1.5}, 1.0);
    CHECK(valuation_bound(owning, Payoff({0.5, 1.5})).value == 0.0);

    CHECK(valuation_bound(arrow2(), Payoff({1.0, 1.0})).value ==
          doctest::Approx(1.0).epsilon(1e-9));

    // only a bond trades: admissible state prices form the whole simplex,
    // so the best value of e1 is its largest coordinate weight
    CHECK(valuation_bound(bond3(), Payoff({1.0, 0.0, 0.0})).value ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cheapest dominating portfolio on fixed targets") {
    const ReplicationReport arrow_unit = superreplication_price(arrow2(), Payoff({1.0, 1.0}));
    CHECK(arrow_unit.price == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(arrow_unit.portfolio[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(arrow_unit.portfolio[1] == doctest::Approx(1.0).epsilon(1e-7));

    const ReplicationReport bond_e1 = superreplication_price(bond3(), Payoff({1.0, 0.0, 0.0}));
    CHECK(bond_e1.price == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bond_e1.portfolio[0] == doctest::Approx(1.0).epsilon(1e-7));

    // a target already covered by the endowment costs nothing
    const Market owning = arrow2({2.0, 2.0}, 1.0);
    CHECK(superreplication_price(owning, Payoff({1.5, 0.5})).price <= 1e-9);
}

TEST_CASE("pricing bound and cheapest cover form a dual pair") {
    Rng rng(3131);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.index(3);
        const std::size_t j = 2 + rng.index(2);
        const Market m = oracle::random_arbitrage_free_market(rng, n, j);
        const Payoff target(rng.uniform_vector(n, 0.0, 3.0));

        const double lower = valuation_bound(m, target).value;
        const double upper = superreplication_price(m, target).price;
        CHECK(upper >= lower - 1e-7);
        CHECK(std::fabs(upper - lower) <= 1e-6);
    }
}

TEST_CASE("covering cost is monotone and convex in the target") {
    Rng rng(3232);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + rng.index(3);
        const Market m = oracle::random_arbitrage_free_market(rng, n, 3);
        const Payoff big(rng.uniform_vector(n, 0.5, 3.0));
        std::vector<double> shrink(n);
        for (std::size_t i = 0; i < n; ++i) shrink[i] = big[i] * rng.unit();
        const Payoff small(shrink);

        const double price_big = superreplication_price(m, big).price;
        const double price_small = superreplication_price(m, small).price;
        CHECK(price_small <= price_big + 1e-9);

        const double alpha = rng.unit();
        const Payoff mix = alpha * big + (1.0 - alpha) * small;
        CHECK(superreplication_price(m, mix).price <=
              alpha * price_big + (1.0 - alpha) * price_small + 1e-9);
    }
}

TEST_CASE("market construction is validated") {
    // endowment below zero
    CHECK_THROWS_AS(Market({{1.0, 1.0}}, {1.0}, {-0.5, 1.0}, 1.0, 0), InputError);
    // negative cash wealth
    CHECK_THROWS_AS(Market({{1.0, 1.0}}, {1.0}, {1.0, 1.0}, -1.0, 0), InputError);
    // declared bond column is not all ones
    CHECK_THROWS_AS(Market({{1.0, 2.0}}, {1.0}, {1.0, 1.0}, 1.0, 0), InputError);
    // declared bond column out of range
    CHECK_THROWS_AS(Market({{1.0, 1.0}}, {1.0}, {1.0, 1.0}, 1.0, 3), InputError);
    // price vector width disagrees with the column count
    CHECK_THROWS_AS(Market({{1.0, 1.0}}, {1.0, 2.0}, {1.0, 1.0}, 1.0, 0), InputError);
    // ragged columns
    CHECK_THROWS_AS(Market({{1.0, 1.0}, {1.0}}, {1.0, 1.0}, {1.0, 1.0}, 1.0, 0),
                    InputError);
    // no column (or combination) pays the unit: order-unit assumption fails
    CHECK_THROWS_AS(Market({{1.0, 0.0}}, {1.0}, {1.0, 1.0}, 1.0), InputError);
    // a replicated unit is fine even without a literal bond column
    CHECK_NOTHROW(Market({{1.0, 0.0}, {0.0, 1.0}}, {0.5, 0.5}, {1.0, 1.0}, 1.0));
}

TEST_CASE("pricing operations reject unusable inputs") {
    CHECK_THROWS_AS(superreplication_price(arrow2(), Payoff({-1.0, 0.0})), InputError);
    CHECK_THROWS_AS(superreplication_price(arrow2(), Payoff({1.0, 0.0, 0.0})), InputError);
    CHECK_THROWS_AS(valuation_bound(arrow2(), Payoff({1.0})), InputError);

    // with an arbitrage the covering problem has no finite optimum
    const Market bad({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {0.5, 0.5, 1.2},
                     {0.0, 0.0}, 1.0, 2);
    CHECK_THROWS_AS(superreplication_price(bad, Payoff({1.0, 0.0})), InputError);
}

TEST_CASE("portfolio payoff and cost do plain linear algebra") {
    const Market m({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {0.5, 0.5, 1.0},
                   {0.0, 0.0}, 1.0, 2);
    const std::vector<double> h = {2.0, -1.0, 0.5};
    const Payoff payoff = m.portfolio_payoff(h);
    CHECK(payoff[0] == 2.5);
    CHECK(payoff[1] == -0.5);
    CHECK(m.portfolio_cost(h) == 2.0 * 0.5 - 1.0 * 0.5 + 0.5 * 1.0);
}
