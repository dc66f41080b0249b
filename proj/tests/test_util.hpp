#pragma once

#include "lpdvfs/core.hpp"
#include "lpdvfs/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace testutil {

/// Random LP on an integer grid: up to 4 variables and 4 rows, finite
/// integer box. Right-hand sides are biased toward feasibility half the
/// time by anchoring them to a random box point.
inline lpdvfs::LinearProgram random_tiny_lp(std::mt19937& rng) {
    std::uniform_int_distribution<int> var_count(1, 4);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> cost(-5, 5);
    std::uniform_int_distribution<int> low(-2, 0);
    std::uniform_int_distribution<int> width(1, 3);
    std::uniform_int_distribution<int> rhs(-4, 4);
    std::uniform_int_distribution<int> coin(0, 1);

    lpdvfs::LinearProgram lp;
    const int n = var_count(rng);
    for (int j = 0; j < n; ++j) {
        lp.objective.push_back(cost(rng));
        const int l = low(rng);
        lp.lower.push_back(l);
        lp.upper.push_back(l + width(rng));
    }

    std::uniform_int_distribution<int> eq_count(0, 1);
    const int eq = eq_count(rng);
    std::uniform_int_distribution<int> ub_count(0, 4 - eq);
    const int ub = ub_count(rng);

    // Anchor point inside the box for feasibility-biased rows.
    std::vector<double> anchor;
    for (int j = 0; j < n; ++j) {
        std::uniform_int_distribution<int> inside(static_cast<int>(lp.lower[j]),
                                                  static_cast<int>(lp.upper[j]));
        anchor.push_back(inside(rng));
    }
    const bool anchored = coin(rng) == 1;

    for (int r = 0; r < eq; ++r) {
        std::vector<double> row;
        double at_anchor = 0.0;
        for (int j = 0; j < n; ++j) {
            row.push_back(coeff(rng));
            at_anchor += row.back() * anchor[j];
        }
        lp.eq_rows.push_back(row);
        lp.eq_rhs.push_back(anchored ? at_anchor : rhs(rng));
    }
    for (int r = 0; r < ub; ++r) {
        std::vector<double> row;
        double at_anchor = 0.0;
        for (int j = 0; j < n; ++j) {
            row.push_back(coeff(rng));
            at_anchor += row.back() * anchor[j];
        }
        lp.ub_rows.push_back(row);
        lp.ub_rhs.push_back(anchored ? at_anchor + std::uniform_int_distribution<int>(0, 2)(rng)
                                     : rhs(rng));
    }
    return lp;
}

/// Worst constraint violation of x against lp.
inline double max_residual(const lpdvfs::LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.eq_rows[r][j] * x[j];
        worst = std::max(worst, std::abs(lhs - lp.eq_rhs[r]));
    }
    for (std::size_t r = 0; r < lp.ub_rows.size(); ++r) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.ub_rows[r][j] * x[j];
        worst = std::max(worst, lhs - lp.ub_rhs[r]);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, lp.lower[j] - x[j]);
        worst = std::max(worst, x[j] - lp.upper[j]);
    }
    return worst;
}

/// Random taskset with per-task density <= 1; arrivals on a small integer
/// grid so deadlines collide often.
inline std::vector<lpdvfs::Task> random_taskset(std::mt19937& rng, int max_tasks = 5) {
    std::uniform_int_distribution<int> count(1, max_tasks);
    std::uniform_int_distribution<int> arrival(0, 6);
    std::uniform_int_distribution<int> deadline(2, 12);
    std::uniform_real_distribution<double> density(0.05, 1.0);

    std::vector<lpdvfs::Task> tasks;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        lpdvfs::Task task;
        task.id = i + 1;
        task.arrival = arrival(rng);
        task.rel_deadline = deadline(rng);
        task.est_min_exec = std::round(density(rng) * task.rel_deadline * 16.0) / 16.0;
        if (task.est_min_exec <= 0.0) task.est_min_exec = 0.0625;
        tasks.push_back(task);
    }
    return tasks;
}

} // namespace testutil
