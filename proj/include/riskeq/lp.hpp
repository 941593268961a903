#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace riskeq {

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

enum class Relation { LessEq, Equal, GreaterEq };

enum class Sense { Minimize, Maximize };

const char* to_string(LpStatus s);

// Dense linear program
//
//   optimize  c . x
//   s.t.      rows[i] . x  (<= | = | >=)  rhs[i]
//             lower[j] <= x[j] <= upper[j]
//
// Bounds may be +-infinity(). Problems in this codebase are small
// (tens of variables), so everything is stored dense.
struct LpProblem {
    Sense sense = Sense::Minimize;
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<Relation> relations;
    std::vector<double> rhs;
    std::vector<double> lower;
    std::vector<double> upper;

    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

    // n variables with free bounds and zero objective.
    static LpProblem make(Sense sense, std::size_t n);

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rows.size(); }

    void add_row(std::vector<double> coefficients, Relation rel, double right);
    void set_bounds(std::size_t j, double lo, double hi);

    // Throws InputError on dimension mismatches or non-finite data.
    void validate() const;
};

struct LpSolution {
    LpStatus status = LpStatus::NumericalFailure;

    // Populated only when status == Optimal.
    std::vector<double> primal;
    double objective = 0.0;

    // Shadow prices: duals[i] is d(objective)/d(rhs[i]) in the problem's
    // own sense. Zero for rows that are slack at the optimum.
    std::vector<double> duals;
    double dual_objective = 0.0;

    // Certification metrics from a fresh factorization of the final basis.
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
};

// Two-phase dense tableau simplex with Bland's rule (always on) and an
// LU-based certification step with one round of iterative refinement.
// A basis that certifies badly is reported as NumericalFailure rather
// than silently returned.
LpSolution solve(const LpProblem& problem);

}  // namespace riskeq
