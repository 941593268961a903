#include "riskeq/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "riskeq/errors.hpp"
#include "riskeq/lp.hpp"
#include "riskeq/rng.hpp"

namespace riskeq {

bool AxiomReport::all_passed() const {
    return std::all_of(axioms.begin(), axioms.end(),
                       [](const AxiomResult& a) { return a.passed; });
}

namespace {

// A ranking flip only counts against an axiom when both sides clear this
// band; differences inside it are indistinguishable from rounding.
constexpr double kTieBand = 1e-9;
constexpr double kSignBand = 2e-9;

void record(AxiomResult& result, const Payoff& x, const std::vector<double>& y,
            double parameter, double lhs, double rhs) {
    if (!result.passed) return;
    result.passed = false;
    PropertyCounterexample ce;
    ce.x = x.values();
    ce.y = y;
    ce.parameter = parameter;
    ce.lhs = lhs;
    ce.rhs = rhs;
    result.counterexample = std::move(ce);
}

}  // namespace

AxiomReport run_axiom_battery(const std::function<double(const Payoff&)>& utility,
                              const Cone& acceptance, std::size_t n, int trials,
                              std::uint64_t seed, double tol) {
    if (n == 0) throw InputError("axiom battery needs at least one state");
    if (acceptance.dimension() != n) {
        throw InputError("acceptance cone dimension does not match the state count");
    }
    if (trials <= 0) throw InputError("axiom battery needs a positive trial count");

    AxiomReport report;
    report.trials = trials;
    report.seed = seed;
    report.axioms = {
        AxiomResult{"order", true, 0, std::nullopt},
        AxiomResult{"certainty_independence", true, 0, std::nullopt},
        AxiomResult{"continuity", true, 0, std::nullopt},
        AxiomResult{"monotonicity", true, 0, std::nullopt},
        AxiomResult{"hedging", true, 0, std::nullopt},
        AxiomResult{"acceptance_consistency", true, 0, std::nullopt},
    };
    AxiomResult& order = report.axioms[0];
    AxiomResult& indep = report.axioms[1];
    AxiomResult& cont = report.axioms[2];
    AxiomResult& mono = report.axioms[3];
    AxiomResult& hedge = report.axioms[4];
    AxiomResult& accept = report.axioms[5];

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Payoff x(rng.uniform_vector(n, -10.0, 10.0));
        const Payoff y(rng.uniform_vector(n, -10.0, 10.0));
        const Payoff z(rng.uniform_vector(n, -10.0, 10.0));
        const double ux = utility(x);
        const double uy = utility(y);
        const double uz = utility(z);

        // Order: the score must be a finite real; transitivity of the
        // induced ranking is then checked on the sampled triple.
        {
            ++order.checks;
            if (!std::isfinite(ux) || !std::isfinite(uy) || !std::isfinite(uz)) {
                record(order, x, y.values(), 0.0, ux, uy);
            } else if (ux >= uy && uy >= uz && ux < uz) {
                record(order, x, y.values(), uz, ux, uy);
            }
        }

        // Certainty independence: mix both sides with the same constant
        // payout; a decisive ranking must survive in the same direction.
        {
            const double alpha = rng.uniform(0.05, 0.95);
            const double cash = rng.uniform(-5.0, 5.0);
            const Payoff cash_side = Payoff::constant(n, (1.0 - alpha) * cash);
            const double mx = utility(alpha * x + cash_side);
            const double my = utility(alpha * y + cash_side);
            if (std::fabs(ux - uy) > kTieBand) {
                ++indep.checks;
                const bool flipped = (ux - uy > kTieBand && my - mx > kTieBand) ||
                                     (uy - ux > kTieBand && mx - my > kTieBand);
                if (flipped) record(indep, x, y.values(), alpha, mx, my);
            }
        }

        // Continuity, in the quantitative form usable on samples.
        {
            ++cont.checks;
            const double lhs = std::fabs(ux - uy);
            const double rhs = sup_norm(x - y);
            if (lhs > rhs + tol) record(cont, x, y.values(), 0.0, lhs, rhs);
        }

        // Monotonicity (a): statewise dominance never lowers the rank.
        // (b): a uniform gap forces a strictly better rank.
        {
            ++mono.checks;
            std::vector<double> wv(n);
            for (std::size_t i = 0; i < n; ++i) wv[i] = x[i] - std::fabs(rng.uniform(-4.0, 4.0));
            const Payoff w(wv);
            const double uw = utility(w);
            if (uw > ux + tol) {
                record(mono, x, wv, 0.0, ux, uw);
            }
            const double eps = rng.uniform(0.1, 1.0);
            std::vector<double> gv(n);
            for (std::size_t i = 0; i < n; ++i) gv[i] = wv[i] - eps;
            const Payoff gap(gv);
            const double ug = utility(gap);
            if (!(uw > ug + kTieBand)) {
                record(mono, w, gv, eps, uw, ug);
            }
        }

        // Hedging: mixing two payoffs is never worse than the worse one.
        // Applied to a pair made indifferent by a cash shift, this is the
        // statement that diversification between equally ranked positions
        // does not hurt.
        {
            ++hedge.checks;
            const Payoff y_level = add_cash(y, ux - uy);
            const double uyl = utility(y_level);
            const double alpha = rng.uniform(0.01, 0.99);
            const double um = utility(alpha * x + (1.0 - alpha) * y_level);
            const double worse = std::min(ux, uyl);
            if (um < worse - tol) record(hedge, x, y_level.values(), alpha, um, worse);
        }

        // Acceptance consistency: sign of the score against membership in
        // the acceptance cone, with a dead band around zero.
        {
            ++accept.checks;
            const bool inside = cone_contains(acceptance, x);
            if (ux > kSignBand && !inside) {
                record(accept, x, {}, cone_margin(acceptance, x), ux, 0.0);
            } else if (ux < -kSignBand && inside) {
                record(accept, x, {}, cone_margin(acceptance, x), ux, 0.0);
            }
        }
    }
    return report;
}

AxiomReport run_axiom_battery(const AmbiguitySet& set, int trials, std::uint64_t seed,
                              double tol) {
    const Cone cone = acceptance_cone(set);
    const auto utility = [&set](const Payoff& x) { return maxmin_utility(set, x).utility; };
    return run_axiom_battery(utility, cone, set.dimension(), trials, seed, tol);
}

AcceptanceWitness acceptance_witness(const AmbiguitySet& set,
                                     const ProbabilityVector& probe) {
    const std::size_t n = set.dimension();
    if (probe.size() != n) {
        throw InputError("probe measure dimension does not match the ambiguity set");
    }

    // Is the probe a convex combination of the generators? If so, every
    // payoff it values nonnegatively is already acceptable to the hull.
    {
        const std::size_t k = set.size();
        LpProblem hull = LpProblem::make(Sense::Minimize, k);
        for (std::size_t v = 0; v < k; ++v) hull.set_bounds(v, 0.0, LpProblem::infinity());
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<double> row(k);
            for (std::size_t v = 0; v < k; ++v) row[v] = set.vertex(v)[s];
            hull.add_row(std::move(row), Relation::Equal, probe[s]);
        }
        hull.add_row(std::vector<double>(k, 1.0), Relation::Equal, 1.0);
        const LpSolution sol = solve(hull);
        if (sol.status == LpStatus::Optimal) {
            throw InputError("probe measure lies in the hull of the ambiguity set");
        }
        if (sol.status != LpStatus::Infeasible) {
            throw NumericalError("hull membership check did not certify");
        }
    }

    // Find a payoff the probe accepts while the whole set rejects it
    // decisively: minimize the best-case expectation over the set subject
    // to a nonnegative probe expectation, inside a box (payoffs scale, so
    // the box only fixes the normalization).
    const double kMargin = -1.001;
    for (double box : {10.0, 20.0}) {
        LpProblem lp = LpProblem::make(Sense::Minimize, n + 1);
        lp.objective[n] = 1.0;
        for (std::size_t s = 0; s < n; ++s) lp.set_bounds(s, -box, box);
        for (std::size_t v = 0; v < set.size(); ++v) {
            std::vector<double> row(n + 1, 0.0);
            for (std::size_t s = 0; s < n; ++s) row[s] = -set.vertex(v)[s];
            row[n] = 1.0;
            lp.add_row(std::move(row), Relation::GreaterEq, 0.0);  // t >= E_v[x]
        }
        {
            std::vector<double> row(n + 1, 0.0);
            for (std::size_t s = 0; s < n; ++s) row[s] = probe[s];
            lp.add_row(std::move(row), Relation::GreaterEq, 0.0);
        }
        const LpSolution sol = solve(lp);
        if (sol.status != LpStatus::Optimal) {
            throw NumericalError("witness search did not certify");
        }
        if (sol.objective > kMargin) continue;

        std::vector<double> xv(sol.primal.begin(), sol.primal.begin() + n);
        Payoff x(xv);
        // The LP guarantees the probe expectation up to solver residuals;
        // nudge with cash so the reported payoff satisfies it outright.
        double pe = expectation(probe, x);
        if (pe < 0.0) {
            x = add_cash(x, -pe + 1e-9);
            pe = expectation(probe, x);
        }
        const double worst = maxmin_utility(set, x).utility;
        if (pe < 0.0 || worst > -1.0) {
            throw NumericalError("witness verification failed after the solve");
        }
        AcceptanceWitness w;
        w.payoff = x.values();
        w.reference_expectation = pe;
        w.worst_case = worst;
        return w;
    }
    throw NumericalError("no witness found inside the enlarged search box");
}

}  // namespace riskeq
