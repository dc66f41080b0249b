#pragma once

#include <cstddef>
#include <vector>

namespace lpdvfs {

/// A small dense LP:
///   minimize    objective . x
///   subject to  eq_rows x == eq_rhs
///               ub_rows x <= ub_rhs
///               lower <= x <= upper        (finite box)
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ub_rows;
    std::vector<double> ub_rhs;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t variable_count() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x; // only meaningful when Optimal
    double objective = 0.0;
};

/// Two-phase primal simplex for bounded variables on a dense tableau,
/// with Bland's smallest-index anti-cycling rule. Deterministic: a given
/// program always yields the same basic optimal solution.
///
/// An instance holds scratch state for one solve at a time; distinct
/// instances are independent.
class SimplexSolver {
  public:
    static constexpr double kPivotTolerance = 1e-10;
    static constexpr double kFeasibilityTolerance = 1e-9;

    /// Throws DimensionMismatchError on inconsistent shapes or non-finite
    /// bounds, and Error on iteration-limit exhaustion (a defect: the
    /// anti-cycling rule guarantees termination).
    LpOutcome solve(const LinearProgram& lp);

  private:
    enum class VarStatus { Basic, AtLower, AtUpper };

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;        // structural + slack + artificial
    std::size_t structural_ = 0;  // original variable count
    std::size_t artificial_begin_ = 0;
    std::vector<std::vector<double>> tableau_; // rows_ x cols_, holds B^-1 A
    std::vector<double> rhs_;                  // B^-1 b
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> cost_;
    std::vector<int> basis_;        // column basic in each row
    std::vector<VarStatus> status_;

    void load(const LinearProgram& lp);
    void compute_basic_values(std::vector<double>& values) const;
    bool run_phase(const std::vector<double>& cost, std::size_t iteration_limit);
    void pivot(std::size_t row, std::size_t col);
    void drive_out_artificials();
    double nonbasic_value(std::size_t col) const;
};

/// One-shot convenience wrapper around SimplexSolver.
LpOutcome solve_lp(const LinearProgram& lp);

} // namespace lpdvfs
