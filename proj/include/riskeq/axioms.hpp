#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riskeq/payoff.hpp"
#include "riskeq/risk.hpp"

namespace riskeq {

struct AxiomResult {
    std::string axiom;
    bool passed = true;
    int checks = 0;  // comparisons actually made (ties may be skipped)
    std::optional<PropertyCounterexample> counterexample;
};

struct AxiomReport {
    std::vector<AxiomResult> axioms;
    int trials = 0;
    std::uint64_t seed = 0;

    bool all_passed() const;
};

// Randomized battery over the behavioral requirements on a preference
// score U together with its set of acceptable payoffs:
//   order            U is a finite total score (induces a complete,
//                    transitive ranking; spot-checked on triples)
//   certainty_independence   mixing both sides with the same constant
//                    payout never flips a strict ranking
//   continuity       |U(x) - U(y)| <= sup-norm distance (Lipschitz form)
//   monotonicity     statewise-dominated payoffs never rank higher, and a
//                    uniform statewise gap forces a strict ranking
//   hedging          a mix of two payoffs ranks no worse than the worse one
//   acceptance_consistency   U(x) >= 0 exactly when x lies in the
//                    acceptance cone
AxiomReport run_axiom_battery(const std::function<double(const Payoff&)>& utility,
                              const Cone& acceptance, std::size_t n, int trials,
                              std::uint64_t seed, double tol = 1e-7);

// Same battery with the worst-case-expectation utility and acceptance
// cone induced by the ambiguity set.
AxiomReport run_axiom_battery(const AmbiguitySet& set, int trials, std::uint64_t seed,
                              double tol = 1e-7);

struct AcceptanceWitness {
    std::vector<double> payoff;
    double reference_expectation = 0.0;  // under the probe measure, >= 0
    double worst_case = 0.0;             // under the ambiguity set, <= -1
};

// Probe measure outside the ambiguity set: produces a payoff the probe
// values nonnegatively while every measure in the set deems it deeply
// unacceptable. Shows the acceptance-consistency requirement has bite:
// a score agreeing with the probe satisfies everything else yet breaks
// it. Throws InputError when the probe lies inside the set's hull, where
// no such payoff exists.
AcceptanceWitness acceptance_witness(const AmbiguitySet& set,
                                     const ProbabilityVector& probe);

}  // namespace riskeq
