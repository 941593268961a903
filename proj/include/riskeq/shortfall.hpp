#pragma once

#include "riskeq/payoff.hpp"
#include "riskeq/risk.hpp"

namespace riskeq {

enum class LossKind { Identity, Linear, Exponential, PositivePart };

// Convex nondecreasing loss applied to the shortfall -x - t. PositivePart
// is only weakly increasing; reports carry that flag because the infimum
// it defines can sit at the edge of a flat segment.
struct LossFunction {
    LossKind kind = LossKind::Identity;
    double k = 1.0;          // slope (Linear) or rate (Exponential)
    double intercept = 0.0;  // Linear only

    static LossFunction identity() { return {LossKind::Identity, 1.0, 0.0}; }
    static LossFunction linear(double slope, double intercept = 0.0);
    static LossFunction exponential(double rate);
    static LossFunction positive_part() { return {LossKind::PositivePart, 1.0, 0.0}; }

    double operator()(double z) const;
    bool strictly_increasing() const { return kind != LossKind::PositivePart; }
    const char* name() const;
};

LossFunction loss_from_name(const std::string& name, double k, double intercept = 0.0);

// Worst-case expected loss of holding x plus t units of cash:
// max over generators of E[ loss(-x - t) ].
double robust_expected_loss(const AmbiguitySet& set, const LossFunction& loss,
                            const Payoff& x, double t);

struct ShortfallReport {
    double value = 0.0;      // inf { t : robust expected loss of x + t <= threshold }
    double threshold = 0.0;
    int iterations = 0;
    double bracket_width = 0.0;  // final bisection bracket
    bool strict_loss = true;
};

// Capital requirement under a shortfall constraint. The identity loss has
// the closed form max_k E_k[-x] - threshold; every other loss is solved by
// bracketing and bisecting the monotone predicate "robust expected loss
// <= threshold". The returned value is the feasible end of the final
// bracket, so the predicate holds at it. Bisection runs to width `tol`.
ShortfallReport shortfall_risk(const AmbiguitySet& set, const LossFunction& loss,
                               double threshold, const Payoff& x, double tol = 1e-9);

// Identity-loss shortfall at threshold zero against the cone-induced
// capital requirement of the same ambiguity set; true when they agree
// within tol. Both reduce to the worst-case expected loss, so this is an
// executable consistency check between the two constructions.
bool sr_matches_cone_risk(const AmbiguitySet& set, const Payoff& x, double tol = 1e-7);

// Acceptability without solving for the infimum: is the uncapitalized
// position already within the loss budget?
bool shortfall_acceptable(const AmbiguitySet& set, const LossFunction& loss,
                          double threshold, const Payoff& x, double tol = kMembershipTol);

}  // namespace riskeq
