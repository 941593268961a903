#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace riskeq {

// Default tolerances. Membership tests ask "is this value >= -tol",
// interior tests ask "is this value >= +tol"; the interior band is wider
// so that boundary points are classified as non-interior, never the
// other way round.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kInteriorTol = 1e-7;

// State-contingent payoff on a finite state space: one currency amount
// per state of the world.
class Payoff {
public:
    explicit Payoff(std::vector<double> values);

    static Payoff constant(std::size_t n, double value);
    static Payoff zero(std::size_t n) { return constant(n, 0.0); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

Payoff operator+(const Payoff& x, const Payoff& y);
Payoff operator-(const Payoff& x, const Payoff& y);
Payoff operator*(double s, const Payoff& x);

// x + t * (1,...,1): shift every state by the same cash amount.
Payoff add_cash(const Payoff& x, double t);

double min_entry(const Payoff& x);
double max_entry(const Payoff& x);
double sup_norm(const Payoff& x);

// x >= y in every state (exact comparison; callers add slack themselves).
bool dominates(const Payoff& x, const Payoff& y);

// Probability weights over the finite state space: nonnegative entries
// summing to one within kMembershipTol.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> weights);

    static ProbabilityVector point_mass(std::size_t n, std::size_t state);
    static ProbabilityVector uniform(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

double expectation(const ProbabilityVector& pi, const Payoff& x);

double dot(std::span<const double> a, std::span<const double> b);

// Polyhedral cone { x : a_i . x >= 0 for every stored normal a_i }.
// At least one normal is required; the trivial "whole space" cone is not
// representable on purpose.
class Cone {
public:
    explicit Cone(std::vector<std::vector<double>> normals);

    // The nonnegative orthant: normals are the standard basis vectors.
    static Cone positive_orthant(std::size_t n);

    std::size_t size() const { return normals_.size(); }
    std::size_t dimension() const { return normals_.empty() ? 0 : normals_[0].size(); }
    std::span<const double> normal(std::size_t i) const { return normals_[i]; }

    // True when every normal has strictly positive mass against (1,...,1),
    // i.e. adding cash eventually moves any payoff into the cone.
    bool order_unit_compatible() const;

private:
    std::vector<std::vector<double>> normals_;
};

// min_i a_i . x, the most violated (or least satisfied) inequality.
double cone_margin(const Cone& cone, const Payoff& x);

bool cone_contains(const Cone& cone, const Payoff& x, double tol = kMembershipTol);
bool cone_interior_contains(const Cone& cone, const Payoff& x, double tol = kInteriorTol);

}  // namespace riskeq
