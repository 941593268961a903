#include "riskeq/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskeq/errors.hpp"
#include "riskeq/lp.hpp"

namespace riskeq {

namespace {

constexpr double kStrictnessFloor = 1e-8;  // below this, state prices do not count as positive
constexpr double kWitnessFloor = 1e-7;

bool is_unit_column(const std::vector<double>& col) {
    return std::all_of(col.begin(), col.end(), [](double e) { return e == 1.0; });
}

}  // namespace

Market::Market(std::vector<std::vector<double>> asset_columns, std::vector<double> prices,
               std::vector<double> endowment, double wealth,
               std::optional<std::size_t> bond_column)
    : columns_(std::move(asset_columns)),
      prices_(std::move(prices)),
      endowment_(std::move(endowment)),
      wealth_(wealth),
      bond_column_(bond_column) {
    if (columns_.empty()) throw InputError("market needs at least one asset");
    if (endowment_.empty()) throw InputError("market needs at least one state");
    const std::size_t n = endowment_.size();
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != n) {
            throw InputError("asset column " + std::to_string(j) + " has " +
                             std::to_string(columns_[j].size()) + " states, expected " +
                             std::to_string(n));
        }
        for (double e : columns_[j]) {
            if (!std::isfinite(e)) throw InputError("asset column has a non-finite entry");
        }
    }
    if (prices_.size() != columns_.size()) {
        throw InputError("price vector length does not match the asset count");
    }
    for (double q : prices_) {
        if (!std::isfinite(q)) throw InputError("price vector has a non-finite entry");
    }
    // The zero endowment and zero wealth are both admitted: pure pricing
    // scenarios set one or the other to zero and stay well-posed.
    for (double e : endowment_) {
        if (!std::isfinite(e)) throw InputError("endowment has a non-finite entry");
        if (e < 0.0) throw InputError("endowment must be nonnegative statewise");
    }
    if (!std::isfinite(wealth_) || wealth_ < 0.0) {
        throw InputError("initial wealth must be finite and nonnegative");
    }

    if (bond_column_) {
        if (*bond_column_ >= columns_.size()) {
            throw InputError("bond column index out of range");
        }
        if (!is_unit_column(columns_[*bond_column_])) {
            throw InputError("designated bond column is not the unit payoff");
        }
    } else {
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            if (is_unit_column(columns_[j])) {
                bond_column_ = j;
                break;
            }
        }
    }

    if (!bond_column_) {
        // No literal bond: the unit payoff must still be a combination of
        // the traded assets, otherwise cash translation is not available.
        LpProblem feas = LpProblem::make(Sense::Minimize, num_assets());
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<double> row(num_assets());
            for (std::size_t j = 0; j < num_assets(); ++j) row[j] = columns_[j][s];
            feas.add_row(std::move(row), Relation::Equal, 1.0);
        }
        const LpSolution sol = solve(feas);
        if (sol.status == LpStatus::Infeasible) {
            throw InputError("no portfolio replicates the unit payoff");
        }
        if (sol.status != LpStatus::Optimal) {
            throw NumericalError("unit-payoff replication check did not certify");
        }
    }
}

Payoff Market::portfolio_payoff(const std::vector<double>& holdings) const {
    if (holdings.size() != num_assets()) {
        throw InputError("holdings length does not match the asset count");
    }
    std::vector<double> v(num_states(), 0.0);
    for (std::size_t j = 0; j < num_assets(); ++j) {
        const double h = holdings[j];
        if (h == 0.0) continue;
        for (std::size_t s = 0; s < num_states(); ++s) v[s] += h * columns_[j][s];
    }
    return Payoff(std::move(v));
}

double Market::portfolio_cost(const std::vector<double>& holdings) const {
    if (holdings.size() != num_assets()) {
        throw InputError("holdings length does not match the asset count");
    }
    return dot(prices_, holdings);
}

ArbitrageReport check_arbitrage(const Market& market) {
    const std::size_t n = market.num_states();
    const std::size_t j = market.num_assets();

    // Variables: f (state prices), delta (their smallest entry, capped so
    // the program stays bounded). Maximize delta subject to R^T f = q and
    // f_s >= delta.
    LpProblem best = LpProblem::make(Sense::Maximize, n + 1);
    best.objective[n] = 1.0;
    best.set_bounds(n, -LpProblem::infinity(), 1.0);
    for (std::size_t a = 0; a < j; ++a) {
        std::vector<double> row(n + 1, 0.0);
        for (std::size_t s = 0; s < n; ++s) row[s] = market.entry(s, a);
        best.add_row(std::move(row), Relation::Equal, market.prices()[a]);
    }
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> row(n + 1, 0.0);
        row[s] = 1.0;
        row[n] = -1.0;
        best.add_row(std::move(row), Relation::GreaterEq, 0.0);
    }
    const LpSolution sol = solve(best);
    if (sol.status == LpStatus::NumericalFailure || sol.status == LpStatus::Unbounded) {
        throw NumericalError("state-price search did not certify");
    }

    ArbitrageReport report;
    if (sol.status == LpStatus::Optimal && sol.primal[n] > kStrictnessFloor) {
        ArbitrageCertificate cert;
        cert.state_prices.assign(sol.primal.begin(), sol.primal.begin() + n);
        cert.strictness = *std::min_element(cert.state_prices.begin(), cert.state_prices.end());
        double residual = 0.0;
        for (std::size_t a = 0; a < j; ++a) {
            double lhs = 0.0;
            for (std::size_t s = 0; s < n; ++s) lhs += market.entry(s, a) * cert.state_prices[s];
            residual = std::max(residual, std::fabs(lhs - market.prices()[a]));
        }
        cert.residual = residual;
        report.arbitrage_free = true;
        report.certificate = std::move(cert);
        return report;
    }

    // No strictly positive state prices: look for an explicit arbitrage in
    // the unit box. Maximize total payoff minus cost under q.h <= 0 and
    // R h >= 0; any strictly positive value scales to an arbitrage.
    LpProblem wit = LpProblem::make(Sense::Maximize, j);
    for (std::size_t a = 0; a < j; ++a) {
        wit.set_bounds(a, -1.0, 1.0);
        double coef = -market.prices()[a];
        for (std::size_t s = 0; s < n; ++s) coef += market.entry(s, a);
        wit.objective[a] = coef;
    }
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> row(j);
        for (std::size_t a = 0; a < j; ++a) row[a] = market.entry(s, a);
        wit.add_row(std::move(row), Relation::GreaterEq, 0.0);
    }
    wit.add_row(market.prices(), Relation::LessEq, 0.0);
    const LpSolution wsol = solve(wit);
    if (wsol.status != LpStatus::Optimal) {
        throw NumericalError("arbitrage witness search did not certify");
    }
    report.arbitrage_free = false;
    if (wsol.objective > kWitnessFloor) {
        ArbitrageWitness w;
        w.portfolio = wsol.primal;
        w.cost = market.portfolio_cost(w.portfolio);
        w.payoff = market.portfolio_payoff(w.portfolio).values();
        report.witness = std::move(w);
    }
    return report;
}

ValuationReport valuation_bound(const Market& market, const Payoff& target) {
    const std::size_t n = market.num_states();
    if (target.size() != n) throw InputError("target payoff has the wrong state count");

    LpProblem lp = LpProblem::make(Sense::Maximize, n);
    for (std::size_t s = 0; s < n; ++s) {
        lp.set_bounds(s, 0.0, LpProblem::infinity());
        lp.objective[s] = target[s] - market.endowment()[s];
    }
    for (std::size_t a = 0; a < market.num_assets(); ++a) {
        std::vector<double> row(n);
        for (std::size_t s = 0; s < n; ++s) row[s] = market.entry(s, a);
        lp.add_row(std::move(row), Relation::Equal, market.prices()[a]);
    }
    const LpSolution sol = solve(lp);
    if (sol.status == LpStatus::Infeasible) {
        throw InputError("no nonnegative state prices match the quoted prices");
    }
    if (sol.status == LpStatus::Unbounded) {
        throw InputError("valuation bound is unbounded; the quoted prices admit arbitrage");
    }
    if (sol.status != LpStatus::Optimal) {
        throw NumericalError("valuation bound did not certify");
    }
    ValuationReport report;
    report.value = sol.objective;
    report.state_prices = sol.primal;
    return report;
}

ReplicationReport superreplication_price(const Market& market, const Payoff& target) {
    const std::size_t n = market.num_states();
    const std::size_t j = market.num_assets();
    if (target.size() != n) throw InputError("target payoff has the wrong state count");
    for (std::size_t s = 0; s < n; ++s) {
        if (target[s] < 0.0) throw InputError("super-replication target must be nonnegative");
    }

    LpProblem lp = LpProblem::make(Sense::Minimize, j);
    lp.objective = market.prices();
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> row(j);
        for (std::size_t a = 0; a < j; ++a) row[a] = market.entry(s, a);
        lp.add_row(std::move(row), Relation::GreaterEq, target[s] - market.endowment()[s]);
    }
    const LpSolution sol = solve(lp);
    if (sol.status == LpStatus::Unbounded) {
        throw InputError("super-replication cost is unbounded below; the market admits arbitrage");
    }
    if (sol.status == LpStatus::Infeasible) {
        throw InputError("no portfolio dominates the target payoff");
    }
    if (sol.status != LpStatus::Optimal) {
        throw NumericalError("super-replication did not certify");
    }
    ReplicationReport report;
    report.price = sol.objective;
    report.portfolio = sol.primal;
    report.payoff = market.portfolio_payoff(sol.primal).values();
    return report;
}

}  // namespace riskeq
