#pragma once

#include <cstddef>
#include <vector>

#include "riskeq/market.hpp"
#include "riskeq/risk.hpp"

namespace riskeq {

struct OptimizationResult {
    std::vector<double> position;   // chosen statewise payoff, nonnegative
    std::vector<double> portfolio;  // asset holdings financing it
    double utility = 0.0;           // worst-case expectation of the position
    double risk = 0.0;              // exactly -utility
    std::size_t argmin_vertex = 0;  // measure attaining the worst case
    double autarky_utility = 0.0;   // worst-case expectation of the endowment alone
    bool lowered_exposure = false;  // trading did not hurt: risk <= -autarky_utility
    double budget_slack = 0.0;      // wealth minus the cost of the holdings
};

// Maximize the worst-case expected value of a nonnegative position funded
// by the endowment plus a budget-feasible trade. One linear program over
// (position, holdings, worst-case level); requires an arbitrage-free
// market, which is verified first.
OptimizationResult optimize_position(const Market& market, const AmbiguitySet& set);

struct EquivalenceReport {
    double max_utility = 0.0;      // value of the utility-maximization program
    double min_risk = 0.0;         // value of the risk-minimization program
    double value_gap = 0.0;        // |max_utility + min_risk|
    double attainment_gap = 0.0;   // |risk(utility-optimal position) - min_risk|
    bool values_negate = false;
    bool position_attains = false;
    bool pass = false;
};

// The two programs are the same problem with the objective negated; this
// solves both independently and checks that the values mirror each other
// and that the utility-optimal position is also risk-optimal.
EquivalenceReport equivalence_report(const Market& market, const AmbiguitySet& set,
                                     double tol = 1e-7);

struct PrudenceReport {
    double floor = 0.0;        // smallest state payout of the optimal position
    double utility = 0.0;      // optimal worst-case utility
    double floor_cost = 0.0;   // super-replication price of that constant payout
    bool constant_affordable = false;
    bool value_matches = false;  // floor equals the optimal utility
    bool pass = false;
};

// Under the full-simplex ambiguity set the worst case is the worst state,
// so the optimum is as good as a constant payout at its floor; checks that
// the floor is affordable and matches the optimal value.
PrudenceReport prudence_check(const Market& market, const AmbiguitySet& set,
                              double tol = 1e-7);

}  // namespace riskeq
