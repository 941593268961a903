#include "riskeq/portfolio.hpp"

#include <algorithm>
#include <cmath>

#include "riskeq/errors.hpp"
#include "riskeq/lp.hpp"

namespace riskeq {

namespace {

// Shared constraint block: a nonnegative position c financed by holdings h,
//   c <= endowment + R h   statewise,
//   q . h <= wealth,
// plus one scalar variable tied to the worst-case expectation of c.
// Variable layout: [c (N), h (J), level (1)].
LpProblem budget_program(const Market& market, const AmbiguitySet& set, bool maximize_level) {
    const std::size_t n = market.num_states();
    const std::size_t j = market.num_assets();
    LpProblem lp = LpProblem::make(maximize_level ? Sense::Maximize : Sense::Minimize, n + j + 1);
    const std::size_t level = n + j;
    lp.objective[level] = 1.0;
    for (std::size_t s = 0; s < n; ++s) lp.set_bounds(s, 0.0, LpProblem::infinity());

    for (std::size_t k = 0; k < set.size(); ++k) {
        std::vector<double> row(n + j + 1, 0.0);
        for (std::size_t s = 0; s < n; ++s) row[s] = set.vertex(k)[s];
        row[level] = maximize_level ? -1.0 : 1.0;
        // maximize: level <= E_k[c];  minimize: level >= -E_k[c].
        lp.add_row(std::move(row), Relation::GreaterEq, 0.0);
    }
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> row(n + j + 1, 0.0);
        row[s] = 1.0;
        for (std::size_t a = 0; a < j; ++a) row[n + a] = -market.entry(s, a);
        lp.add_row(std::move(row), Relation::LessEq, market.endowment()[s]);
    }
    {
        std::vector<double> row(n + j + 1, 0.0);
        for (std::size_t a = 0; a < j; ++a) row[n + a] = market.prices()[a];
        lp.add_row(std::move(row), Relation::LessEq, market.wealth());
    }
    return lp;
}

LpSolution solve_budget_program(const Market& market, const AmbiguitySet& set,
                                bool maximize_level) {
    const LpSolution sol = solve(budget_program(market, set, maximize_level));
    if (sol.status == LpStatus::Unbounded) {
        throw NumericalError("budget program unbounded despite the no-arbitrage certificate");
    }
    if (sol.status != LpStatus::Optimal) {
        // The endowment itself is always feasible, so anything else is a
        // solver breakdown, not a modeling outcome.
        throw NumericalError("budget program did not certify");
    }
    return sol;
}

std::vector<double> clamped_position(const LpSolution& sol, std::size_t n) {
    std::vector<double> c(sol.primal.begin(), sol.primal.begin() + n);
    for (double& e : c) e = std::max(e, 0.0);
    return c;
}

}  // namespace

OptimizationResult optimize_position(const Market& market, const AmbiguitySet& set) {
    if (set.dimension() != market.num_states()) {
        throw InputError("ambiguity set and market state counts differ");
    }
    const ArbitrageReport arb = check_arbitrage(market);
    if (!arb.arbitrage_free) {
        throw InputError("market admits arbitrage; the optimization is ill-posed");
    }

    const std::size_t n = market.num_states();
    const std::size_t j = market.num_assets();
    const LpSolution sol = solve_budget_program(market, set, /*maximize_level=*/true);

    OptimizationResult out;
    out.position = clamped_position(sol, n);
    out.portfolio.assign(sol.primal.begin() + n, sol.primal.begin() + n + j);

    const RiskReport rr = maxmin_utility(set, Payoff(out.position));
    out.utility = rr.utility;
    out.risk = rr.value;
    out.argmin_vertex = rr.argmin_vertex;
    out.autarky_utility = maxmin_utility(set, Payoff(market.endowment())).utility;
    out.lowered_exposure = out.risk <= -out.autarky_utility + kMembershipTol;
    out.budget_slack = market.wealth() - market.portfolio_cost(out.portfolio);
    return out;
}

EquivalenceReport equivalence_report(const Market& market, const AmbiguitySet& set,
                                     double tol) {
    if (set.dimension() != market.num_states()) {
        throw InputError("ambiguity set and market state counts differ");
    }
    const ArbitrageReport arb = check_arbitrage(market);
    if (!arb.arbitrage_free) {
        throw InputError("market admits arbitrage; the optimization is ill-posed");
    }

    const std::size_t n = market.num_states();
    const LpSolution best_utility = solve_budget_program(market, set, true);
    const LpSolution least_risk = solve_budget_program(market, set, false);

    EquivalenceReport rep;
    rep.max_utility = best_utility.objective;
    rep.min_risk = least_risk.objective;
    rep.value_gap = std::fabs(rep.max_utility + rep.min_risk);

    const std::vector<double> cstar = clamped_position(best_utility, n);
    const double risk_of_cstar = maxmin_utility(set, Payoff(cstar)).value;
    rep.attainment_gap = std::fabs(risk_of_cstar - rep.min_risk);

    rep.values_negate = rep.value_gap <= tol;
    rep.position_attains = rep.attainment_gap <= tol;
    rep.pass = rep.values_negate && rep.position_attains;
    return rep;
}

PrudenceReport prudence_check(const Market& market, const AmbiguitySet& set, double tol) {
    if (!set.is_full_simplex()) {
        throw InputError("prudence analysis requires the full-simplex ambiguity set");
    }
    const OptimizationResult opt = optimize_position(market, set);

    PrudenceReport rep;
    rep.floor = *std::min_element(opt.position.begin(), opt.position.end());
    rep.utility = opt.utility;

    const Payoff constant = Payoff::constant(market.num_states(), rep.floor);
    rep.floor_cost = superreplication_price(market, constant).price;

    rep.constant_affordable = rep.floor_cost <= market.wealth() + tol;
    rep.value_matches = std::fabs(rep.floor - rep.utility) <= tol;
    rep.pass = rep.constant_affordable && rep.value_matches;
    return rep;
}

}  // namespace riskeq
