#include "riskeq/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskeq/errors.hpp"

namespace riskeq {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double e : v) {
        if (!std::isfinite(e)) {
            throw InputError(std::string(what) + " contains a non-finite entry");
        }
    }
}

void require_same_size(const Payoff& x, const Payoff& y) {
    if (x.size() != y.size()) {
        throw InputError("payoff dimensions differ: " + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()));
    }
}

}  // namespace

Payoff::Payoff(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InputError("payoff needs at least one state");
    require_finite(values_, "payoff");
}

Payoff Payoff::constant(std::size_t n, double value) {
    return Payoff(std::vector<double>(n, value));
}

Payoff operator+(const Payoff& x, const Payoff& y) {
    require_same_size(x, y);
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] + y[i];
    return Payoff(std::move(v));
}

Payoff operator-(const Payoff& x, const Payoff& y) {
    require_same_size(x, y);
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] - y[i];
    return Payoff(std::move(v));
}

Payoff operator*(double s, const Payoff& x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * x[i];
    return Payoff(std::move(v));
}

Payoff add_cash(const Payoff& x, double t) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = x[i] + t;
    return Payoff(std::move(v));
}

double min_entry(const Payoff& x) {
    return *std::min_element(x.values().begin(), x.values().end());
}

double max_entry(const Payoff& x) {
    return *std::max_element(x.values().begin(), x.values().end());
}

double sup_norm(const Payoff& x) {
    double m = 0.0;
    for (double e : x.values()) m = std::max(m, std::fabs(e));
    return m;
}

bool dominates(const Payoff& x, const Payoff& y) {
    require_same_size(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return false;
    }
    return true;
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw InputError("probability vector needs at least one state");
    require_finite(weights_, "probability vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (w < 0.0) throw InputError("probability vector has a negative weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kMembershipTol) {
        throw InputError("probability weights sum to " + std::to_string(sum) +
                         ", expected 1 within 1e-9");
    }
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t n, std::size_t state) {
    if (state >= n) throw InputError("point mass state index out of range");
    std::vector<double> w(n, 0.0);
    w[state] = 1.0;
    return ProbabilityVector(std::move(w));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
    if (n == 0) throw InputError("probability vector needs at least one state");
    return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double expectation(const ProbabilityVector& pi, const Payoff& x) {
    if (pi.size() != x.size()) {
        throw InputError("probability vector and payoff dimensions differ");
    }
    return dot(pi.weights(), x.values());
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Cone::Cone(std::vector<std::vector<double>> normals) : normals_(std::move(normals)) {
    if (normals_.empty()) throw InputError("cone needs at least one normal");
    const std::size_t n = normals_[0].size();
    if (n == 0) throw InputError("cone normals need at least one coordinate");
    for (const auto& a : normals_) {
        if (a.size() != n) throw InputError("cone normals have mixed dimensions");
        require_finite(a, "cone normal");
        bool all_zero = std::all_of(a.begin(), a.end(), [](double e) { return e == 0.0; });
        if (all_zero) throw InputError("cone normal is identically zero");
    }
}

Cone Cone::positive_orthant(std::size_t n) {
    std::vector<std::vector<double>> normals(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) normals[i][i] = 1.0;
    return Cone(std::move(normals));
}

bool Cone::order_unit_compatible() const {
    for (const auto& a : normals_) {
        double s = 0.0;
        for (double e : a) s += e;
        if (!(s > 0.0)) return false;
    }
    return true;
}

double cone_margin(const Cone& cone, const Payoff& x) {
    if (cone.dimension() != x.size()) {
        throw InputError("cone and payoff dimensions differ");
    }
    double m = dot(cone.normal(0), x.values());
    for (std::size_t i = 1; i < cone.size(); ++i) {
        m = std::min(m, dot(cone.normal(i), x.values()));
    }
    return m;
}

bool cone_contains(const Cone& cone, const Payoff& x, double tol) {
    return cone_margin(cone, x) >= -tol;
}

bool cone_interior_contains(const Cone& cone, const Payoff& x, double tol) {
    return cone_margin(cone, x) >= tol;
}

}  // namespace riskeq
