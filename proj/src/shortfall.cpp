#include "riskeq/shortfall.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "riskeq/errors.hpp"

namespace riskeq {

LossFunction LossFunction::linear(double slope, double intercept) {
    if (!(slope > 0.0)) throw InputError("linear loss needs a positive slope");
    if (!std::isfinite(intercept)) throw InputError("linear loss intercept must be finite");
    return {LossKind::Linear, slope, intercept};
}

LossFunction LossFunction::exponential(double rate) {
    if (!(rate > 0.0)) throw InputError("exponential loss needs a positive rate");
    return {LossKind::Exponential, rate, 0.0};
}

double LossFunction::operator()(double z) const {
    switch (kind) {
        case LossKind::Identity: return z;
        case LossKind::Linear: return k * z + intercept;
        case LossKind::Exponential: return std::expm1(k * z);
        case LossKind::PositivePart: return z > 0.0 ? z : 0.0;
    }
    return z;
}

const char* LossFunction::name() const {
    switch (kind) {
        case LossKind::Identity: return "identity";
        case LossKind::Linear: return "linear";
        case LossKind::Exponential: return "exponential";
        case LossKind::PositivePart: return "positive_part";
    }
    return "identity";
}

LossFunction loss_from_name(const std::string& name, double k, double intercept) {
    if (name == "identity") return LossFunction::identity();
    if (name == "linear") return LossFunction::linear(k, intercept);
    if (name == "exponential") return LossFunction::exponential(k);
    if (name == "positive_part") return LossFunction::positive_part();
    throw InputError("unknown loss function '" + name + "'");
}

double robust_expected_loss(const AmbiguitySet& set, const LossFunction& loss,
                            const Payoff& x, double t) {
    if (set.dimension() != x.size()) {
        throw InputError("ambiguity set and payoff dimensions differ");
    }
    std::vector<double> losses(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) losses[i] = loss(-x[i] - t);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t kv = 0; kv < set.size(); ++kv) {
        // Zero-weight states are skipped so an overflowed loss value under
        // a point mass elsewhere cannot poison the sum with 0 * inf.
        const auto& w = set.vertex(kv).weights();
        double e = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 0.0) e += w[i] * losses[i];
        }
        worst = std::max(worst, e);
    }
    return worst;
}

ShortfallReport shortfall_risk(const AmbiguitySet& set, const LossFunction& loss,
                               double threshold, const Payoff& x, double tol) {
    if (!std::isfinite(threshold)) throw InputError("shortfall threshold must be finite");
    if (!(tol > 0.0)) throw InputError("shortfall tolerance must be positive");
    // Thresholds at or below the infimum of the loss range make every
    // capital level insufficient.
    if (loss.kind == LossKind::Exponential && threshold <= -1.0) {
        throw InputError("threshold below the range of the exponential loss");
    }
    if (loss.kind == LossKind::PositivePart && threshold < 0.0) {
        throw InputError("threshold below the range of the positive-part loss");
    }

    ShortfallReport report;
    report.threshold = threshold;
    report.strict_loss = loss.strictly_increasing();

    if (loss.kind == LossKind::Identity) {
        // g(t) = max_k E_k[-x] - t, so the infimum solves in closed form.
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t kv = 0; kv < set.size(); ++kv) {
            worst = std::max(worst, -expectation(set.vertex(kv), x));
        }
        report.value = worst - threshold;
        return report;
    }

    const auto g = [&](double t) { return robust_expected_loss(set, loss, x, t); };

    double width = sup_norm(x) + 1.0;
    double hi = width;
    double lo = -width;
    int sweeps = 0;
    while (g(hi) > threshold) {
        if (++sweeps > 200) throw NumericalError("shortfall bracket sweep failed upward");
        lo = hi;
        hi = 2.0 * hi + width;
    }
    sweeps = 0;
    while (g(lo) <= threshold) {
        if (++sweeps > 200) throw NumericalError("shortfall bracket sweep failed downward");
        hi = lo;
        lo = 2.0 * lo - width;
    }

    int iters = 0;
    while (hi - lo > tol && iters < 200) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) <= threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++iters;
    }
    report.value = hi;
    report.iterations = iters;
    report.bracket_width = hi - lo;
    return report;
}

bool shortfall_acceptable(const AmbiguitySet& set, const LossFunction& loss,
                          double threshold, const Payoff& x, double tol) {
    return robust_expected_loss(set, loss, x, 0.0) <= threshold + tol;
}

bool sr_matches_cone_risk(const AmbiguitySet& set, const Payoff& x, double tol) {
    const double sr = shortfall_risk(set, LossFunction::identity(), 0.0, x).value;
    const double cr = cone_risk(acceptance_cone(set), x);
    return std::fabs(sr - cr) <= tol;
}

}  // namespace riskeq
