#include "riskeq/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskeq/errors.hpp"

namespace riskeq {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

LpProblem LpProblem::make(Sense sense, std::size_t n) {
    LpProblem p;
    p.sense = sense;
    p.objective.assign(n, 0.0);
    p.lower.assign(n, -infinity());
    p.upper.assign(n, infinity());
    return p;
}

void LpProblem::add_row(std::vector<double> coefficients, Relation rel, double right) {
    rows.push_back(std::move(coefficients));
    relations.push_back(rel);
    rhs.push_back(right);
}

void LpProblem::set_bounds(std::size_t j, double lo, double hi) {
    lower.at(j) = lo;
    upper.at(j) = hi;
}

void LpProblem::validate() const {
    const std::size_t n = num_vars();
    if (n == 0) throw InputError("linear program has no variables");
    if (lower.size() != n || upper.size() != n) {
        throw InputError("linear program bound arrays do not match variable count");
    }
    if (relations.size() != rows.size() || rhs.size() != rows.size()) {
        throw InputError("linear program row arrays have mismatched lengths");
    }
    for (double c : objective) {
        if (!std::isfinite(c)) throw InputError("linear program objective has a non-finite entry");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) {
            throw InputError("linear program row " + std::to_string(i) + " has wrong width");
        }
        for (double a : rows[i]) {
            if (!std::isfinite(a)) throw InputError("linear program row has a non-finite entry");
        }
        if (!std::isfinite(rhs[i])) throw InputError("linear program rhs has a non-finite entry");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j])) {
            throw InputError("linear program bound is NaN");
        }
        if (lower[j] == infinity() || upper[j] == -infinity()) {
            throw InputError("linear program bound excludes every value");
        }
        if (lower[j] > upper[j]) {
            throw InputError("linear program variable " + std::to_string(j) +
                             " has lower bound above upper bound");
        }
    }
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr double kCertPrimalTol = 1e-8;
constexpr double kCertDualTol = 1e-8;
constexpr double kCertGapTol = 1e-7;

// Dense LU with partial pivoting for the final basis solve. Matrices here
// are at most a few dozen rows, so plain row-major factorization is enough.
struct Lu {
    std::vector<std::vector<double>> f;  // packed factors
    std::vector<std::size_t> perm;
    bool ok = false;
};

Lu lu_factor(std::vector<std::vector<double>> a) {
    Lu lu;
    const std::size_t n = a.size();
    lu.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) lu.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(a[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(a[i][k]) > best) {
                best = std::fabs(a[i][k]);
                piv = i;
            }
        }
        if (best < 1e-13) return lu;  // singular
        std::swap(a[k], a[piv]);
        std::swap(lu.perm[k], lu.perm[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            a[i][k] /= a[k][k];
            const double lik = a[i][k];
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= lik * a[k][j];
        }
    }
    lu.f = std::move(a);
    lu.ok = true;
    return lu;
}

std::vector<double> lu_solve(const Lu& lu, const std::vector<double>& b) {
    const std::size_t n = lu.f.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[lu.perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu.f[i][j] * x[j];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu.f[i][j] * x[j];
        x[i] /= lu.f[i][i];
    }
    return x;
}

std::vector<double> mat_vec(const std::vector<std::vector<double>>& m,
                            const std::vector<double>& v) {
    std::vector<double> r(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    }
    return r;
}

// Solve M z = rhs with one round of iterative refinement.
std::vector<double> refined_solve(const Lu& lu, const std::vector<std::vector<double>>& m,
                                  const std::vector<double>& rhs) {
    std::vector<double> z = lu_solve(lu, rhs);
    std::vector<double> mz = mat_vec(m, z);
    std::vector<double> r(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - mz[i];
    std::vector<double> dz = lu_solve(lu, r);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += dz[i];
    return z;
}

// How each original variable is expressed in standard-form columns.
struct VarMap {
    enum Kind { Shift, Mirror, Split } kind = Shift;
    std::size_t col = 0;
    std::size_t col2 = 0;  // Split only
    double shift = 0.0;
};

// min c.x, A x = b, x >= 0, b >= 0, plus bookkeeping to translate the
// solution and duals back to the caller's formulation.
struct Standard {
    std::size_t m = 0;
    std::size_t n = 0;  // structural + slack columns (artificials excluded)
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c;
    double constant = 0.0;
    double sense_mult = 1.0;  // +1 minimize, -1 maximize

    std::vector<VarMap> var_map;
    // Per standard row: index of the source row in the caller's problem,
    // or SIZE_MAX for a synthesized upper-bound row; and the sign flip
    // applied to make b nonnegative.
    std::vector<std::size_t> source_row;
    std::vector<double> row_sign;
};

Standard standardize(const LpProblem& p) {
    const std::size_t n0 = p.num_vars();
    const std::size_t m0 = p.num_rows();
    Standard s;
    s.sense_mult = (p.sense == Sense::Maximize) ? -1.0 : 1.0;

    // Column layout: transformed originals first (split variables take two
    // columns), then one slack per inequality row, then one slack per
    // synthesized upper-bound row.
    s.var_map.resize(n0);
    std::size_t cols = 0;
    std::vector<std::size_t> bounded;  // originals needing an upper-bound row
    for (std::size_t j = 0; j < n0; ++j) {
        const double lo = p.lower[j];
        const double hi = p.upper[j];
        VarMap& vm = s.var_map[j];
        if (lo != -LpProblem::infinity()) {
            vm.kind = VarMap::Shift;
            vm.shift = lo;
            vm.col = cols++;
            if (hi != LpProblem::infinity()) bounded.push_back(j);
        } else if (hi != LpProblem::infinity()) {
            vm.kind = VarMap::Mirror;
            vm.shift = hi;
            vm.col = cols++;
        } else {
            vm.kind = VarMap::Split;
            vm.col = cols++;
            vm.col2 = cols++;
        }
    }

    std::size_t slack_rows = 0;
    for (Relation r : p.relations) {
        if (r != Relation::Equal) ++slack_rows;
    }
    const std::size_t m = m0 + bounded.size();
    const std::size_t n = cols + slack_rows + bounded.size();
    s.m = m;
    s.n = n;
    s.a.assign(m, std::vector<double>(n, 0.0));
    s.b.assign(m, 0.0);
    s.c.assign(n, 0.0);
    s.source_row.assign(m, static_cast<std::size_t>(-1));
    s.row_sign.assign(m, 1.0);

    // Objective in minimize sense, rewritten through the variable maps.
    for (std::size_t j = 0; j < n0; ++j) {
        const double cj = s.sense_mult * p.objective[j];
        const VarMap& vm = s.var_map[j];
        switch (vm.kind) {
            case VarMap::Shift:
                s.c[vm.col] += cj;
                s.constant += cj * vm.shift;
                break;
            case VarMap::Mirror:
                s.c[vm.col] -= cj;
                s.constant += cj * vm.shift;
                break;
            case VarMap::Split:
                s.c[vm.col] += cj;
                s.c[vm.col2] -= cj;
                break;
        }
    }

    std::size_t next_slack = cols;
    for (std::size_t i = 0; i < m0; ++i) {
        double bi = p.rhs[i];
        auto& row = s.a[i];
        for (std::size_t j = 0; j < n0; ++j) {
            const double aij = p.rows[i][j];
            if (aij == 0.0) continue;
            const VarMap& vm = s.var_map[j];
            switch (vm.kind) {
                case VarMap::Shift:
                    row[vm.col] += aij;
                    bi -= aij * vm.shift;
                    break;
                case VarMap::Mirror:
                    row[vm.col] -= aij;
                    bi -= aij * vm.shift;
                    break;
                case VarMap::Split:
                    row[vm.col] += aij;
                    row[vm.col2] -= aij;
                    break;
            }
        }
        if (p.relations[i] == Relation::LessEq) {
            row[next_slack++] = 1.0;
        } else if (p.relations[i] == Relation::GreaterEq) {
            row[next_slack++] = -1.0;
        }
        s.b[i] = bi;
        s.source_row[i] = i;
    }

    for (std::size_t k = 0; k < bounded.size(); ++k) {
        const std::size_t j = bounded[k];
        const std::size_t i = m0 + k;
        s.a[i][s.var_map[j].col] = 1.0;
        s.a[i][next_slack++] = 1.0;
        s.b[i] = p.upper[j] - p.lower[j];
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (s.b[i] < 0.0) {
            for (double& e : s.a[i]) e = -e;
            s.b[i] = -s.b[i];
            s.row_sign[i] = -1.0;
        }
    }
    return s;
}

// Full-tableau simplex over the given cost vector. Columns at index >=
// entering_limit (the artificials) never enter. Returns false when the
// iteration cap trips.
struct Tableau {
    std::vector<std::vector<double>> t;  // m x (ncols + 1), rhs last
    std::vector<double> cost;            // ncols + 1, objective (negated) last
    std::vector<std::size_t> basis;      // column basic in each row
    std::size_t ncols = 0;
};

void price_out(Tableau& tb, const std::vector<double>& costs) {
    tb.cost.assign(tb.ncols + 1, 0.0);
    for (std::size_t j = 0; j < tb.ncols; ++j) tb.cost[j] = costs[j];
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
        const double cb = costs[tb.basis[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= tb.ncols; ++j) tb.cost[j] -= cb * tb.t[i][j];
    }
}

void pivot(Tableau& tb, std::size_t r, std::size_t j) {
    auto& prow = tb.t[r];
    const double piv = prow[j];
    for (double& e : prow) e /= piv;
    prow[j] = 1.0;
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
        if (i == r) continue;
        const double f = tb.t[i][j];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k <= tb.ncols; ++k) tb.t[i][k] -= f * prow[k];
        tb.t[i][j] = 0.0;
    }
    const double f = tb.cost[j];
    if (f != 0.0) {
        for (std::size_t k = 0; k <= tb.ncols; ++k) tb.cost[k] -= f * prow[k];
        tb.cost[j] = 0.0;
    }
    tb.basis[r] = j;
}

enum class RunOutcome { Optimal, Unbounded, IterationCap };

RunOutcome run_simplex(Tableau& tb, std::size_t entering_limit) {
    const std::size_t m = tb.t.size();
    const std::size_t cap = 2000 + 200 * (m + tb.ncols);
    for (std::size_t iter = 0; iter < cap; ++iter) {
        // Bland: smallest-index improving column.
        std::size_t enter = tb.ncols;
        for (std::size_t j = 0; j < entering_limit; ++j) {
            if (tb.cost[j] < -kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == tb.ncols) return RunOutcome::Optimal;

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double aij = tb.t[i][enter];
            if (aij <= kPivotEps) continue;
            const double ratio = tb.t[i][tb.ncols] / aij;
            if (leave == m || ratio < best_ratio - 1e-12 ||
                (std::fabs(ratio - best_ratio) <= 1e-12 && tb.basis[i] < tb.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) return RunOutcome::Unbounded;
        pivot(tb, leave, enter);
    }
    return RunOutcome::IterationCap;
}

double eval_row_violation(const LpProblem& p, std::size_t i, const std::vector<double>& x) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += p.rows[i][j] * x[j];
    switch (p.relations[i]) {
        case Relation::LessEq: return std::max(0.0, lhs - p.rhs[i]);
        case Relation::Equal: return std::fabs(lhs - p.rhs[i]);
        case Relation::GreaterEq: return std::max(0.0, p.rhs[i] - lhs);
    }
    return 0.0;
}

}  // namespace

LpSolution solve(const LpProblem& problem) {
    problem.validate();
    const Standard s = standardize(problem);
    const std::size_t m = s.m;

    // Assemble the tableau with artificial columns where no slack can
    // serve as the starting basic variable.
    Tableau tb;
    std::vector<std::size_t> art_row;        // owning row per artificial
    std::vector<std::size_t> art_col_of_row(m, static_cast<std::size_t>(-1));
    tb.basis.assign(m, 0);
    std::vector<bool> has_start(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        // A slack column usable as a start has +1 in this row and zeros
        // elsewhere; by construction slacks live in a single row, so only
        // the sign matters.
        for (std::size_t j = s.n; j-- > 0;) {
            if (s.a[i][j] != 1.0) continue;
            bool lone = true;
            for (std::size_t k = 0; k < m; ++k) {
                if (k != i && s.a[k][j] != 0.0) {
                    lone = false;
                    break;
                }
            }
            if (lone && s.c[j] == 0.0) {
                tb.basis[i] = j;
                has_start[i] = true;
                break;
            }
        }
        if (!has_start[i]) {
            art_col_of_row[i] = s.n + art_row.size();
            art_row.push_back(i);
        }
    }

    const std::size_t ncols = s.n + art_row.size();
    tb.ncols = ncols;
    tb.t.assign(m, std::vector<double>(ncols + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) tb.t[i][j] = s.a[i][j];
        tb.t[i][ncols] = s.b[i];
        if (!has_start[i]) {
            tb.t[i][art_col_of_row[i]] = 1.0;
            tb.basis[i] = art_col_of_row[i];
        }
    }

    LpSolution out;

    // Phase 1: minimize the artificial mass.
    if (!art_row.empty()) {
        std::vector<double> c1(ncols, 0.0);
        for (std::size_t j = s.n; j < ncols; ++j) c1[j] = 1.0;
        price_out(tb, c1);
        const RunOutcome r1 = run_simplex(tb, ncols);
        if (r1 != RunOutcome::Optimal) {
            out.status = LpStatus::NumericalFailure;
            return out;
        }
        const double phase1 = -tb.cost[ncols];
        if (phase1 > kPhase1Tol) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Pivot leftover artificials out on any usable structural entry;
        // rows with none are redundant and keep a zero-valued artificial.
        for (std::size_t i = 0; i < m; ++i) {
            if (tb.basis[i] < s.n) continue;
            for (std::size_t j = 0; j < s.n; ++j) {
                if (std::fabs(tb.t[i][j]) > 1e-7) {
                    pivot(tb, i, j);
                    break;
                }
            }
        }
    }

    // Phase 2 over the true costs; artificial columns are barred.
    std::vector<double> c2(ncols, 0.0);
    for (std::size_t j = 0; j < s.n; ++j) c2[j] = s.c[j];
    price_out(tb, c2);
    const RunOutcome r2 = run_simplex(tb, s.n);
    if (r2 == RunOutcome::IterationCap) {
        out.status = LpStatus::NumericalFailure;
        return out;
    }
    if (r2 == RunOutcome::Unbounded) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    // Certify against pristine data: refactor the final basis, recompute
    // the primal and dual solutions, and measure residuals.
    std::vector<std::vector<double>> bmat(m, std::vector<double>(m, 0.0));
    std::vector<double> cb(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = tb.basis[k];
        if (j < s.n) {
            for (std::size_t i = 0; i < m; ++i) bmat[i][k] = s.a[i][j];
            cb[k] = s.c[j];
        } else {
            bmat[art_row[j - s.n]][k] = 1.0;
        }
    }

    std::vector<double> xb(m, 0.0), y;
    if (m > 0) {
        const Lu lu = lu_factor(bmat);
        if (!lu.ok) {
            out.status = LpStatus::NumericalFailure;
            return out;
        }
        xb = refined_solve(lu, bmat, s.b);

        std::vector<std::vector<double>> bt(m, std::vector<double>(m, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) bt[i][j] = bmat[j][i];
        }
        const Lu lut = lu_factor(bt);
        if (!lut.ok) {
            out.status = LpStatus::NumericalFailure;
            return out;
        }
        y = refined_solve(lut, bt, cb);
    }

    std::vector<double> xstd(s.n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        if (tb.basis[k] < s.n) xstd[tb.basis[k]] = xb[k];
    }

    // Dual feasibility of the standardized problem: A^T y <= c columnwise.
    double dual_res = 0.0;
    double std_neg = 0.0;
    for (std::size_t j = 0; j < s.n; ++j) {
        double aty = 0.0;
        for (std::size_t i = 0; i < m; ++i) aty += s.a[i][j] * y[i];
        dual_res = std::max(dual_res, aty - s.c[j]);
        std_neg = std::max(std_neg, -xstd[j]);
    }

    // Translate back to the caller's variables.
    const std::size_t n0 = problem.num_vars();
    std::vector<double> x(n0, 0.0);
    for (std::size_t j = 0; j < n0; ++j) {
        const VarMap& vm = s.var_map[j];
        switch (vm.kind) {
            case VarMap::Shift: x[j] = vm.shift + xstd[vm.col]; break;
            case VarMap::Mirror: x[j] = vm.shift - xstd[vm.col]; break;
            case VarMap::Split: x[j] = xstd[vm.col] - xstd[vm.col2]; break;
        }
    }

    double primal_res = std_neg;
    for (std::size_t i = 0; i < problem.num_rows(); ++i) {
        primal_res = std::max(primal_res, eval_row_violation(problem, i, x));
    }
    for (std::size_t j = 0; j < n0; ++j) {
        if (problem.lower[j] != -LpProblem::infinity()) {
            primal_res = std::max(primal_res, problem.lower[j] - x[j]);
        }
        if (problem.upper[j] != LpProblem::infinity()) {
            primal_res = std::max(primal_res, x[j] - problem.upper[j]);
        }
    }

    double objective = 0.0;
    for (std::size_t j = 0; j < n0; ++j) objective += problem.objective[j] * x[j];

    double by = 0.0;
    for (std::size_t i = 0; i < m; ++i) by += s.b[i] * y[i];
    const double dual_objective = s.sense_mult * (by + s.constant);

    const double gap = std::fabs(objective - dual_objective);
    if (primal_res > kCertPrimalTol || dual_res > kCertDualTol || gap > kCertGapTol) {
        out.status = LpStatus::NumericalFailure;
        return out;
    }

    out.status = LpStatus::Optimal;
    out.primal = std::move(x);
    out.objective = objective;
    out.duals.assign(problem.num_rows(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (s.source_row[i] != static_cast<std::size_t>(-1)) {
            out.duals[s.source_row[i]] = s.sense_mult * s.row_sign[i] * y[i];
        }
    }
    out.dual_objective = dual_objective;
    out.primal_residual = primal_res;
    out.dual_residual = std::max(dual_res, 0.0);
    out.duality_gap = gap;
    return out;
}

}  // namespace riskeq
