#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riskeq/payoff.hpp"

namespace riskeq {

// Convex hull of finitely many candidate probability vectors. The stored
// generators need not be extreme points; evaluation only ever takes
// minima over them, which is unaffected by redundant generators.
class AmbiguitySet {
public:
    explicit AmbiguitySet(std::vector<ProbabilityVector> vertices);

    static AmbiguitySet singleton(ProbabilityVector pi);

    // All point masses: the whole probability simplex.
    static AmbiguitySet full_simplex(std::size_t n);

    std::size_t size() const { return vertices_.size(); }
    std::size_t dimension() const { return vertices_[0].size(); }
    const ProbabilityVector& vertex(std::size_t k) const { return vertices_[k]; }

    // True when the generators are exactly the n point masses in some
    // order, i.e. the hull is the entire simplex.
    bool is_full_simplex() const;

private:
    std::vector<ProbabilityVector> vertices_;
};

struct RiskReport {
    double value = 0.0;             // capital required: -utility
    double utility = 0.0;           // worst-case expectation over the set
    std::size_t argmin_vertex = 0;  // smallest index attaining the minimum
    bool acceptable = false;        // value <= tol
};

// Worst-case expected value min_k E_k[x] over the generators, together
// with the induced capital requirement. The minimum over a convex hull of
// finitely many points is attained at a generator, so enumeration is exact.
RiskReport maxmin_utility(const AmbiguitySet& set, const Payoff& x,
                          double tol = kMembershipTol);

// Half-space description of { x : E_k[x] >= 0 for all generators }: the
// set of payoffs every candidate measure values nonnegatively.
Cone acceptance_cone(const AmbiguitySet& set);

// Smallest cash amount t making x + t*1 land in the cone:
// max_i (-a_i . x) / (a_i . 1). Requires an order-unit compatible cone.
double cone_risk(const Cone& cone, const Payoff& x);

struct PropertyCounterexample {
    std::vector<double> x;
    std::vector<double> y;      // empty when the property involves one payoff
    double parameter = 0.0;     // cash shift or scale factor, when applicable
    double lhs = 0.0;
    double rhs = 0.0;
};

struct PropertyResult {
    std::string property;
    bool passed = true;
    std::optional<PropertyCounterexample> counterexample;
};

struct CoherenceReport {
    std::vector<PropertyResult> properties;
    int trials = 0;
    std::uint64_t seed = 0;

    bool all_passed() const;
};

// Randomized battery for the four coherence properties of a capital
// requirement functional: monotonicity (against dominated perturbations),
// cash invariance, subadditivity, and positive homogeneity. The first
// counterexample per property is retained for replay.
CoherenceReport check_coherence(const std::function<double(const Payoff&)>& rho,
                                std::size_t n, int trials, std::uint64_t seed,
                                double tol = 1e-7);

}  // namespace riskeq
