#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "riskeq/errors.hpp"
#include "riskeq/payoff.hpp"
#include "riskeq/rng.hpp"

using namespace riskeq;

TEST_CASE("sup_norm on fixed vectors") {
    CHECK(sup_norm(Payoff({0.0, 0.0, 0.0})) == 0.0);
    CHECK(sup_norm(Payoff({3.0, -5.0, 1.0})) == 5.0);
    for (double t : {-7.25, -1.0, 0.0, 0.5, 3.0, 19.5}) {
        CHECK(sup_norm(Payoff::constant(4, t)) == std::fabs(t));
    }
}

TEST_CASE("sup_norm is a norm on random triples") {
    Rng rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        const Payoff x(rng.uniform_vector(5, -10.0, 10.0));
        const Payoff y(rng.uniform_vector(5, -10.0, 10.0));
        const double lambda = rng.uniform(-3.0, 3.0);

        CHECK(sup_norm(x) >= 0.0);
        CHECK(sup_norm(lambda * x) == doctest::Approx(std::fabs(lambda) * sup_norm(x)).epsilon(1e-12));
        CHECK(sup_norm(x + y) <= sup_norm(x) + sup_norm(y) + 1e-12);
    }
}

TEST_CASE("dominates on fixed pairs") {
    CHECK(dominates(Payoff({1.0, 2.0}), Payoff({1.0, 2.0})));
    CHECK(dominates(Payoff({2.0, 3.0}), Payoff({1.0, 2.0})));
    CHECK_FALSE(dominates(Payoff({2.0, 0.0}), Payoff({1.0, 1.0})));
}

TEST_CASE("dominates is a partial order") {
    Rng rng(202);
    for (int trial = 0; trial < 300; ++trial) {
        const Payoff x(rng.uniform_vector(4, -5.0, 5.0));

        CHECK(dominates(x, x));  // reflexive

        // antisymmetry: mutual dominance forces equality
        Payoff y = x;
        if (dominates(x, y) && dominates(y, x)) {
            for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == y[i]);
        }

        // transitivity along a constructed descending chain
        std::vector<double> d1 = rng.uniform_vector(4, 0.0, 3.0);
        std::vector<double> d2 = rng.uniform_vector(4, 0.0, 3.0);
        const Payoff mid = x - Payoff(d1);
        const Payoff low = mid - Payoff(d2);
        CHECK(dominates(x, mid));
        CHECK(dominates(mid, low));
        CHECK(dominates(x, low));
    }
}

TEST_CASE("payoff arithmetic and cash shifts") {
    const Payoff x({1.0, -2.0, 3.0});
    const Payoff y({0.5, 0.5, -1.0});

    const Payoff sum = x + y;
    CHECK(sum[0] == 1.5);
    CHECK(sum[1] == -1.5);
    CHECK(sum[2] == 2.0);

    const Payoff diff = x - y;
    CHECK(diff[0] == 0.5);
    CHECK(diff[1] == -2.5);
    CHECK(diff[2] == 4.0);

    const Payoff scaled = 2.0 * x;
    CHECK(scaled[0] == 2.0);
    CHECK(scaled[2] == 6.0);

    const Payoff shifted = add_cash(x, 1.5);
    CHECK(shifted[0] == 2.5);
    CHECK(shifted[1] == -0.5);

    CHECK(min_entry(x) == -2.0);
    CHECK(max_entry(x) == 3.0);
}

TEST_CASE("probability vector validation") {
    CHECK_NOTHROW(ProbabilityVector({0.5, 0.5}));
    CHECK_THROWS_AS(ProbabilityVector({0.6, 0.6}), InputError);
    CHECK_THROWS_AS(ProbabilityVector({1.2, -0.2}), InputError);
    CHECK_THROWS_AS(ProbabilityVector(std::vector<double>{}), InputError);

    const ProbabilityVector pm = ProbabilityVector::point_mass(3, 1);
    CHECK(pm[0] == 0.0);
    CHECK(pm[1] == 1.0);
    CHECK(pm[2] == 0.0);

    const ProbabilityVector u = ProbabilityVector::uniform(4);
    CHECK(u[0] == doctest::Approx(0.25));

    CHECK(expectation(ProbabilityVector({0.5, 0.5}), Payoff({1.0, -1.0})) == 0.0);
    const double t = 2.75;
    CHECK(expectation(u, Payoff::constant(4, t)) == doctest::Approx(t).epsilon(1e-14));
}

TEST_CASE("cone membership on fixed examples") {
    const Cone orthant = Cone::positive_orthant(2);
    CHECK(cone_contains(orthant, Payoff({1.0, 0.0})));
    CHECK_FALSE(cone_contains(orthant, Payoff({1.0, -0.5})));

    const Cone half(std::vector<std::vector<double>>{{0.5, 0.5}});
    CHECK(cone_margin(half, Payoff({-1.0, 2.0})) == doctest::Approx(0.5));
    CHECK(cone_contains(half, Payoff({-1.0, 2.0})));
}

TEST_CASE("cone interior on fixed examples") {
    const Cone orthant = Cone::positive_orthant(2);
    CHECK(cone_interior_contains(orthant, Payoff({1.0, 1.0})));
    CHECK_FALSE(cone_interior_contains(orthant, Payoff({1.0, 0.0})));

    // boundary of the first half-space: the first normal gives margin 0
    const Cone two(std::vector<std::vector<double>>{{1.0, 0.0}, {0.5, 0.5}});
    CHECK_FALSE(cone_interior_contains(two, Payoff({0.0, 1.0})));
    CHECK(cone_contains(two, Payoff({0.0, 1.0})));
}

TEST_CASE("cones from probability normals treat cash as an order unit") {
    Rng rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.index(5);
        std::vector<std::vector<double>> normals;
        const std::size_t k = 1 + rng.index(4);
        for (std::size_t i = 0; i < k; ++i) normals.push_back(rng.dyadic_weights(n));
        const Cone cone(std::move(normals));

        CHECK(cone.order_unit_compatible());
        CHECK(cone_interior_contains(cone, Payoff::constant(n, 1.0)));

        const Payoff x(rng.uniform_vector(n, -4.0, 4.0));
        if (cone_interior_contains(cone, x)) CHECK(cone_contains(cone, x));
    }
}

TEST_CASE("cone validation") {
    CHECK_THROWS_AS(Cone(std::vector<std::vector<double>>{}), InputError);
    CHECK_THROWS_AS(Cone({{0.0, 0.0}}), InputError);
    CHECK_THROWS_AS(Cone({{1.0, 0.0}, {1.0}}), InputError);

    const Cone mixed(std::vector<std::vector<double>>{{1.0, -2.0}});
    CHECK_FALSE(mixed.order_unit_compatible());
}
