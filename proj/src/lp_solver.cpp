#include "lpdvfs/lp_solver.hpp"

#include "lpdvfs/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lpdvfs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPhase1Tolerance = 1e-8;
constexpr double kRatioTieTolerance = 1e-10;

enum class PhaseResult { OptimalPoint, Unbounded };

} // namespace

double SimplexSolver::nonbasic_value(std::size_t col) const {
    return status_[col] == VarStatus::AtUpper ? upper_[col] : lower_[col];
}

void SimplexSolver::load(const LinearProgram& lp) {
    const std::size_t n = lp.variable_count();
    if (lp.lower.size() != n || lp.upper.size() != n) {
        throw DimensionMismatchError("bound vectors do not match variable count");
    }
    if (lp.eq_rows.size() != lp.eq_rhs.size() || lp.ub_rows.size() != lp.ub_rhs.size()) {
        throw DimensionMismatchError("constraint rows do not match right-hand sides");
    }
    for (const auto& row : lp.eq_rows) {
        if (row.size() != n) throw DimensionMismatchError("equality row width mismatch");
    }
    for (const auto& row : lp.ub_rows) {
        if (row.size() != n) throw DimensionMismatchError("inequality row width mismatch");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j])) {
            throw DimensionMismatchError("variable bounds must be finite");
        }
        if (lp.lower[j] > lp.upper[j]) {
            throw DimensionMismatchError("lower bound exceeds upper bound at variable " +
                                         std::to_string(j));
        }
    }

    const std::size_t eq = lp.eq_rows.size();
    const std::size_t ub = lp.ub_rows.size();
    rows_ = eq + ub;
    structural_ = n;
    artificial_begin_ = n + ub;
    cols_ = artificial_begin_; // artificials appended below as needed

    tableau_.assign(rows_, std::vector<double>(cols_, 0.0));
    rhs_.assign(rows_, 0.0);
    lower_.assign(cols_, 0.0);
    upper_.assign(cols_, 0.0);
    status_.assign(cols_, VarStatus::AtLower);
    basis_.assign(rows_, -1);

    for (std::size_t j = 0; j < n; ++j) {
        lower_[j] = lp.lower[j];
        upper_[j] = lp.upper[j];
    }
    for (std::size_t s = 0; s < ub; ++s) {
        lower_[n + s] = 0.0;
        upper_[n + s] = kInf;
    }

    for (std::size_t r = 0; r < rows_; ++r) {
        const bool is_eq = r < eq;
        const auto& src = is_eq ? lp.eq_rows[r] : lp.ub_rows[r - eq];
        for (std::size_t j = 0; j < n; ++j) tableau_[r][j] = src[j];
        rhs_[r] = is_eq ? lp.eq_rhs[r] : lp.ub_rhs[r - eq];
        if (!is_eq) tableau_[r][n + (r - eq)] = 1.0;
    }

    // Starting point: structural variables at their lower bounds. An
    // inequality row whose slack residual is nonnegative gets its slack as
    // the initial basic variable; every other row gets an artificial.
    // Rows are pre-negated so artificial columns always carry +1, keeping
    // the initial basis matrix an identity.
    for (std::size_t r = 0; r < rows_; ++r) {
        double residual = rhs_[r];
        for (std::size_t j = 0; j < n; ++j) residual -= tableau_[r][j] * lower_[j];
        const bool is_eq = r < eq;
        if (!is_eq && residual >= 0.0) {
            const std::size_t slack = n + (r - eq);
            basis_[r] = static_cast<int>(slack);
            status_[slack] = VarStatus::Basic;
            continue;
        }
        if (residual < 0.0) {
            for (std::size_t j = 0; j < cols_; ++j) tableau_[r][j] = -tableau_[r][j];
            rhs_[r] = -rhs_[r];
        }
        const std::size_t art = cols_;
        for (auto& row : tableau_) row.push_back(0.0);
        tableau_[r][art] = 1.0;
        lower_.push_back(0.0);
        upper_.push_back(kInf);
        status_.push_back(VarStatus::Basic);
        basis_[r] = static_cast<int>(art);
        ++cols_;
    }
}

void SimplexSolver::compute_basic_values(std::vector<double>& values) const {
    values = rhs_;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        const double v = nonbasic_value(j);
        if (v == 0.0) continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (tableau_[i][j] != 0.0) values[i] -= tableau_[i][j] * v;
        }
    }
}

void SimplexSolver::pivot(std::size_t row, std::size_t col) {
    const double p = tableau_[row][col];
    for (std::size_t j = 0; j < cols_; ++j) tableau_[row][j] /= p;
    tableau_[row][col] = 1.0;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        const double f = tableau_[i][col];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < cols_; ++j) tableau_[i][j] -= f * tableau_[row][j];
        tableau_[i][col] = 0.0;
        rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = static_cast<int>(col);
}

bool SimplexSolver::run_phase(const std::vector<double>& cost, std::size_t iteration_limit) {
    cost_ = cost;
    std::vector<double> basic_values;
    for (std::size_t iter = 0; iter < iteration_limit; ++iter) {
        compute_basic_values(basic_values);

        // Pricing, Bland's rule: smallest-index eligible column enters.
        std::size_t entering = cols_;
        double direction = 1.0;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (status_[j] == VarStatus::Basic) continue;
            if (upper_[j] - lower_[j] <= 0.0) continue; // fixed, cannot move
            double reduced = cost_[j];
            for (std::size_t i = 0; i < rows_; ++i) {
                const double coef = cost_[static_cast<std::size_t>(basis_[i])];
                if (coef != 0.0) reduced -= coef * tableau_[i][j];
            }
            if (status_[j] == VarStatus::AtLower && reduced < -kFeasibilityTolerance) {
                entering = j;
                direction = 1.0;
                break;
            }
            if (status_[j] == VarStatus::AtUpper && reduced > kFeasibilityTolerance) {
                entering = j;
                direction = -1.0;
                break;
            }
        }
        if (entering == cols_) return true; // optimal for this phase

        // Ratio test: smallest step at which the entering variable's own
        // span or some basic variable's bound becomes active. Ties among
        // rows break on the smallest basic column index (Bland).
        const double span = upper_[entering] - lower_[entering];
        double best_row_step = kInf;
        std::size_t best_row = rows_;
        for (std::size_t i = 0; i < rows_; ++i) {
            const double alpha = direction * tableau_[i][entering];
            const std::size_t bcol = static_cast<std::size_t>(basis_[i]);
            double step;
            if (alpha > kPivotTolerance) {
                step = (basic_values[i] - lower_[bcol]) / alpha;
            } else if (alpha < -kPivotTolerance) {
                if (upper_[bcol] == kInf) continue;
                step = (upper_[bcol] - basic_values[i]) / (-alpha);
            } else {
                continue;
            }
            if (step < 0.0) step = 0.0;
            if (step < best_row_step - kRatioTieTolerance) {
                best_row_step = step;
                best_row = i;
            } else if (step <= best_row_step + kRatioTieTolerance && best_row < rows_ &&
                       basis_[i] < basis_[best_row]) {
                best_row = i;
            }
        }

        if (span == kInf && best_row_step == kInf) return false; // unbounded ray
        if (span <= best_row_step) {
            // Bound flip: no basis change.
            status_[entering] = (status_[entering] == VarStatus::AtLower) ? VarStatus::AtUpper
                                                                          : VarStatus::AtLower;
            continue;
        }
        const double leave_alpha = direction * tableau_[best_row][entering];
        const std::size_t leaving = static_cast<std::size_t>(basis_[best_row]);
        pivot(best_row, entering);
        status_[entering] = VarStatus::Basic;
        status_[leaving] = (leave_alpha > 0.0) ? VarStatus::AtLower : VarStatus::AtUpper;
    }
    throw Error("simplex iteration limit exceeded; anti-cycling rule defect");
}

void SimplexSolver::drive_out_artificials() {
    // Pin artificials to zero; basic ones are swapped for any usable
    // structural/slack column. A row with no such column is redundant and
    // keeps its zero-valued artificial.
    for (std::size_t j = artificial_begin_; j < cols_; ++j) upper_[j] = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::size_t bcol = static_cast<std::size_t>(basis_[r]);
        if (bcol < artificial_begin_) continue;
        for (std::size_t j = 0; j < artificial_begin_; ++j) {
            if (status_[j] == VarStatus::Basic) continue;
            if (std::abs(tableau_[r][j]) <= 1e-7) continue;
            pivot(r, j);
            status_[j] = VarStatus::Basic;
            status_[bcol] = VarStatus::AtLower;
            break;
        }
    }
}

LpOutcome SimplexSolver::solve(const LinearProgram& lp) {
    load(lp);
    const std::size_t iteration_limit = 1000 + 100 * (rows_ + cols_);

    if (cols_ > artificial_begin_) {
        std::vector<double> phase1_cost(cols_, 0.0);
        for (std::size_t j = artificial_begin_; j < cols_; ++j) phase1_cost[j] = 1.0;
        run_phase(phase1_cost, iteration_limit); // bounded below by 0, never unbounded

        std::vector<double> basic_values;
        compute_basic_values(basic_values);
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (static_cast<std::size_t>(basis_[i]) >= artificial_begin_) {
                infeasibility += basic_values[i];
            }
        }
        if (infeasibility > kPhase1Tolerance) {
            return LpOutcome{LpStatus::Infeasible, {}, 0.0};
        }
        drive_out_artificials();
    }

    std::vector<double> phase2_cost(cols_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) phase2_cost[j] = lp.objective[j];
    if (!run_phase(phase2_cost, iteration_limit)) {
        return LpOutcome{LpStatus::Unbounded, {}, 0.0};
    }

    std::vector<double> basic_values;
    compute_basic_values(basic_values);
    LpOutcome outcome;
    outcome.status = LpStatus::Optimal;
    outcome.x.assign(structural_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) outcome.x[j] = nonbasic_value(j);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::size_t bcol = static_cast<std::size_t>(basis_[i]);
        if (bcol < structural_) outcome.x[bcol] = basic_values[i];
    }
    for (std::size_t j = 0; j < structural_; ++j) {
        outcome.x[j] = std::min(std::max(outcome.x[j], lp.lower[j]), lp.upper[j]);
        outcome.objective += lp.objective[j] * outcome.x[j];
    }
    return outcome;
}

LpOutcome solve_lp(const LinearProgram& lp) {
    if (lp.objective.empty()) throw DimensionMismatchError("no variables");
    SimplexSolver solver;
    return solver.solve(lp);
}

} // namespace lpdvfs
