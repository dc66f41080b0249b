#include "lpdvfs/partition.hpp"

#include "lpdvfs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lpdvfs {

Snapshot make_snapshot(const SchedulingInstance& instance, double t_now,
                       const std::map<int, double>& executed, double finish_tolerance) {
    Snapshot snap;
    snap.t_now = t_now;
    snap.model = instance.model;
    snap.processors = instance.processors;

    std::vector<Task> active;
    std::vector<Task> sorted = instance.tasks;
    std::sort(sorted.begin(), sorted.end(),
              [](const Task& a, const Task& b) { return a.id < b.id; });
    for (const auto& task : sorted) {
        double done = 0.0;
        if (auto it = executed.find(task.id); it != executed.end()) done = it->second;
        const double remaining = task.est_min_exec - done;
        if (remaining <= finish_tolerance) continue;
        if (task.deadline() <= t_now + kGridMergeTolerance) continue;
        active.push_back(task);
        snap.task_ids.push_back(task.id);
        snap.remaining.push_back(remaining);
    }
    if (active.empty()) throw EmptyHorizonError("no unfinished task with a future deadline");
    snap.grid = build_time_grid(active, t_now);
    return snap;
}

Snapshot initial_snapshot(const SchedulingInstance& instance) {
    return make_snapshot(instance, 0.0, {});
}

PartitionLp build_partition_lp(const Snapshot& snapshot) {
    const auto& grid = snapshot.grid;
    const auto& model = snapshot.model;
    const std::size_t levels = model.level_count();
    const std::size_t tasks = snapshot.task_ids.size();
    const std::size_t intervals = grid.interval_count();

    PartitionLp built;
    auto& lp = built.lp;

    // Columns: one fraction per (task, window interval, level), task-major.
    // column_of[task][interval] is the first of that pair's `levels` columns.
    std::vector<std::vector<std::size_t>> column_of(tasks,
                                                    std::vector<std::size_t>(intervals, SIZE_MAX));
    for (std::size_t t = 0; t < tasks; ++t) {
        const TaskWindow window = grid.windows.at(snapshot.task_ids[t]);
        for (std::size_t mu = window.first; mu < window.last; ++mu) {
            column_of[t][mu] = built.columns.size();
            for (std::size_t q = 0; q < levels; ++q) {
                built.columns.push_back(PartitionVariable{mu, t, q});
                lp.objective.push_back(grid.delta(mu) * model.dynamic_power_mw(q));
            }
        }
    }
    const std::size_t cols = built.columns.size();
    lp.lower.assign(cols, 0.0);
    lp.upper.assign(cols, 1.0);

    // Completion: accumulated speed-weighted time equals remaining work.
    for (std::size_t t = 0; t < tasks; ++t) {
        std::vector<double> row(cols, 0.0);
        const TaskWindow window = grid.windows.at(snapshot.task_ids[t]);
        for (std::size_t mu = window.first; mu < window.last; ++mu) {
            const std::size_t base = column_of[t][mu];
            for (std::size_t q = 0; q < levels; ++q) {
                row[base + q] = grid.delta(mu) * model.speed(q);
            }
        }
        lp.eq_rows.push_back(std::move(row));
        lp.eq_rhs.push_back(snapshot.remaining[t]);
    }

    // A task occupies at most the whole of each interval.
    for (std::size_t t = 0; t < tasks; ++t) {
        const TaskWindow window = grid.windows.at(snapshot.task_ids[t]);
        for (std::size_t mu = window.first; mu < window.last; ++mu) {
            std::vector<double> row(cols, 0.0);
            const std::size_t base = column_of[t][mu];
            for (std::size_t q = 0; q < levels; ++q) row[base + q] = 1.0;
            lp.ub_rows.push_back(std::move(row));
            lp.ub_rhs.push_back(1.0);
        }
    }

    // Total fractional load per interval fits the processor count.
    for (std::size_t mu = 0; mu < intervals; ++mu) {
        std::vector<double> row(cols, 0.0);
        for (std::size_t t = 0; t < tasks; ++t) {
            if (column_of[t][mu] == SIZE_MAX) continue;
            const std::size_t base = column_of[t][mu];
            for (std::size_t q = 0; q < levels; ++q) row[base + q] = 1.0;
        }
        lp.ub_rows.push_back(std::move(row));
        lp.ub_rhs.push_back(static_cast<double>(snapshot.processors));
    }

    return built;
}

std::optional<WorkloadPlan> solve_partition(const Snapshot& snapshot) {
    const std::size_t levels = snapshot.model.level_count();
    const std::size_t intervals = snapshot.grid.interval_count();

    for (std::size_t t = 0; t < snapshot.task_ids.size(); ++t) {
        const auto it = snapshot.grid.windows.find(snapshot.task_ids[t]);
        if (it == snapshot.grid.windows.end() || it->second.first >= it->second.last) {
            return std::nullopt; // no usable window but work remains
        }
    }

    PartitionLp built = build_partition_lp(snapshot);
    SimplexSolver solver;
    const LpOutcome outcome = solver.solve(built.lp);
    if (outcome.status == LpStatus::Infeasible) return std::nullopt;
    if (outcome.status != LpStatus::Optimal) {
        throw Error("partition LP returned an unbounded status; malformed program");
    }

    WorkloadPlan plan;
    plan.grid = snapshot.grid;
    plan.task_ids = snapshot.task_ids;
    plan.objective_mj = outcome.objective;
    plan.fractions.assign(
        intervals, std::vector<std::vector<double>>(snapshot.task_ids.size(),
                                                    std::vector<double>(levels, 0.0)));
    for (std::size_t col = 0; col < built.columns.size(); ++col) {
        const PartitionVariable& var = built.columns[col];
        plan.fractions[var.interval][var.task][var.level] =
            std::clamp(outcome.x[col], 0.0, 1.0);
    }
    return plan;
}

} // namespace lpdvfs
