#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "riskeq/payoff.hpp"

namespace riskeq {

// One-period market on a finite state space: J assets, each a column of
// payoffs over N states, quoted prices, an initial endowment and cash
// wealth. A unit (risk-free) payoff must be replicable; if no column is
// literally all ones, replication is verified at construction.
class Market {
public:
    Market(std::vector<std::vector<double>> asset_columns, std::vector<double> prices,
           std::vector<double> endowment, double wealth,
           std::optional<std::size_t> bond_column = std::nullopt);

    std::size_t num_states() const { return endowment_.size(); }
    std::size_t num_assets() const { return columns_.size(); }

    const std::vector<std::vector<double>>& columns() const { return columns_; }
    const std::vector<double>& prices() const { return prices_; }
    const std::vector<double>& endowment() const { return endowment_; }
    double wealth() const { return wealth_; }
    std::optional<std::size_t> bond_column() const { return bond_column_; }

    double entry(std::size_t state, std::size_t asset) const {
        return columns_[asset][state];
    }

    // R h: state-by-state payoff of holding h.
    Payoff portfolio_payoff(const std::vector<double>& holdings) const;
    double portfolio_cost(const std::vector<double>& holdings) const;

private:
    std::vector<std::vector<double>> columns_;  // one vector per asset
    std::vector<double> prices_;
    std::vector<double> endowment_;
    double wealth_ = 0.0;
    std::optional<std::size_t> bond_column_;
};

struct ArbitrageCertificate {
    std::vector<double> state_prices;  // f with R^T f = q, f strictly positive
    double strictness = 0.0;           // min_n f_n
    double residual = 0.0;             // max_j |column_j . f - q_j|
};

struct ArbitrageWitness {
    std::vector<double> portfolio;  // h with q.h <= 0, R h >= 0, not both tight
    double cost = 0.0;
    std::vector<double> payoff;
};

struct ArbitrageReport {
    bool arbitrage_free = false;
    std::optional<ArbitrageCertificate> certificate;
    std::optional<ArbitrageWitness> witness;
};

// Strictly positive consistent state prices exist iff no arbitrage; this
// decides which by maximizing the smallest state price (capped at 1) and
// produces either the price vector or an explicit arbitrage portfolio.
ArbitrageReport check_arbitrage(const Market& market);

struct ValuationReport {
    double value = 0.0;
    std::vector<double> state_prices;
};

// Largest value of (target - endowment) under any nonnegative state-price
// vector consistent with the quoted prices.
ValuationReport valuation_bound(const Market& market, const Payoff& target);

struct ReplicationReport {
    double price = 0.0;
    std::vector<double> portfolio;
    std::vector<double> payoff;
};

// Cheapest portfolio whose payoff plus the endowment dominates the target
// statewise. Dual to valuation_bound; the two values agree at optimality.
ReplicationReport superreplication_price(const Market& market, const Payoff& target);

}  // namespace riskeq
