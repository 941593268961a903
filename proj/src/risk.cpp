#include "riskeq/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskeq/errors.hpp"
#include "riskeq/rng.hpp"

namespace riskeq {

AmbiguitySet::AmbiguitySet(std::vector<ProbabilityVector> vertices)
    : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw InputError("ambiguity set needs at least one measure");
    const std::size_t n = vertices_[0].size();
    for (const auto& v : vertices_) {
        if (v.size() != n) throw InputError("ambiguity set mixes state-space dimensions");
    }
}

AmbiguitySet AmbiguitySet::singleton(ProbabilityVector pi) {
    std::vector<ProbabilityVector> v;
    v.push_back(std::move(pi));
    return AmbiguitySet(std::move(v));
}

AmbiguitySet AmbiguitySet::full_simplex(std::size_t n) {
    std::vector<ProbabilityVector> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(ProbabilityVector::point_mass(n, i));
    return AmbiguitySet(std::move(v));
}

bool AmbiguitySet::is_full_simplex() const {
    const std::size_t n = dimension();
    if (size() != n) return false;
    std::vector<bool> seen(n, false);
    for (const auto& v : vertices_) {
        std::size_t unit = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 1.0) {
                if (unit != n) return false;
                unit = i;
            } else if (v[i] != 0.0) {
                return false;
            }
        }
        if (unit == n || seen[unit]) return false;
        seen[unit] = true;
    }
    return true;
}

RiskReport maxmin_utility(const AmbiguitySet& set, const Payoff& x, double tol) {
    if (set.dimension() != x.size()) {
        throw InputError("ambiguity set and payoff dimensions differ");
    }
    RiskReport r;
    r.utility = expectation(set.vertex(0), x);
    r.argmin_vertex = 0;
    for (std::size_t k = 1; k < set.size(); ++k) {
        const double e = expectation(set.vertex(k), x);
        if (e < r.utility) {
            r.utility = e;
            r.argmin_vertex = k;
        }
    }
    r.value = -r.utility;
    r.acceptable = r.value <= tol;
    return r;
}

Cone acceptance_cone(const AmbiguitySet& set) {
    std::vector<std::vector<double>> normals;
    normals.reserve(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
        normals.push_back(set.vertex(k).weights());
    }
    return Cone(std::move(normals));
}

double cone_risk(const Cone& cone, const Payoff& x) {
    if (cone.dimension() != x.size()) {
        throw InputError("cone and payoff dimensions differ");
    }
    if (!cone.order_unit_compatible()) {
        throw InputError("cone risk needs every normal to weight cash positively");
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cone.size(); ++i) {
        const auto a = cone.normal(i);
        double mass = 0.0;
        for (double e : a) mass += e;
        worst = std::max(worst, -dot(a, x.values()) / mass);
    }
    return worst;
}

bool CoherenceReport::all_passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed; });
}

namespace {

void record_failure(PropertyResult& result, const Payoff& x, const std::vector<double>& y,
                    double parameter, double lhs, double rhs) {
    if (!result.passed) return;  // keep the first counterexample
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

CoherenceReport check_coherence(const std::function<double(const Payoff&)>& rho,
                                std::size_t n, int trials, std::uint64_t seed,
                                double tol) {
    if (n == 0) throw InputError("coherence battery needs at least one state");
    if (trials <= 0) throw InputError("coherence battery needs a positive trial count");

    CoherenceReport report;
    report.trials = trials;
    report.seed = seed;
    report.properties = {
        PropertyResult{"monotonicity", true, std::nullopt},
        PropertyResult{"cash_invariance", true, std::nullopt},
        PropertyResult{"subadditivity", true, std::nullopt},
        PropertyResult{"positive_homogeneity", true, std::nullopt},
    };
    PropertyResult& mono = report.properties[0];
    PropertyResult& cash = report.properties[1];
    PropertyResult& subadd = report.properties[2];
    PropertyResult& homog = report.properties[3];

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Payoff x(rng.uniform_vector(n, -10.0, 10.0));
        const double rho_x = rho(x);

        // Dominated comparison: y = x - |noise| never exceeds x statewise,
        // so its capital requirement must not be smaller.
        {
            std::vector<double> yv(n);
            for (std::size_t i = 0; i < n; ++i) yv[i] = x[i] - std::fabs(rng.uniform(-5.0, 5.0));
            const Payoff y(yv);
            const double rho_y = rho(y);
            if (rho_x > rho_y + tol) record_failure(mono, x, yv, 0.0, rho_x, rho_y);
        }

        {
            const double shift = rng.uniform(-5.0, 5.0);
            const double lhs = rho(add_cash(x, shift));
            const double rhs = rho_x - shift;
            if (std::fabs(lhs - rhs) > tol) record_failure(cash, x, {}, shift, lhs, rhs);
        }

        {
            const Payoff y(rng.uniform_vector(n, -10.0, 10.0));
            const double lhs = rho(x + y);
            const double rhs = rho_x + rho(y);
            if (lhs > rhs + tol) record_failure(subadd, x, y.values(), 0.0, lhs, rhs);
        }

        {
            const double scale = rng.uniform(0.0, 2.0);
            const double lhs = rho(scale * x);
            const double rhs = scale * rho_x;
            if (std::fabs(lhs - rhs) > tol) record_failure(homog, x, {}, scale, lhs, rhs);
        }
    }
    return report;
}

}  // namespace riskeq
