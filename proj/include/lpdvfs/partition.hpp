#pragma once

#include "lpdvfs/core.hpp"
#include "lpdvfs/lp_solver.hpp"

#include <map>
#include <optional>
#include <vector>

namespace lpdvfs {

/// The scheduling problem as seen at one planning instant: every unfinished
/// task with its remaining work (in seconds of full-speed execution), plus
/// the grid built at that instant.
struct Snapshot {
    double t_now = 0.0;
    std::vector<int> task_ids;     // ascending
    std::vector<double> remaining; // aligned with task_ids, all > 0
    ProcessorModel model;
    int processors = 1;
    TimeGrid grid;
};

/// Builds a snapshot at `t_now` from an instance and per-task work already
/// performed (missing ids count as zero). Tasks that are done (within
/// `finish_tolerance`) or whose deadline is not beyond `t_now` are left out.
/// Throws EmptyHorizonError when nothing remains to plan.
Snapshot make_snapshot(const SchedulingInstance& instance, double t_now,
                       const std::map<int, double>& executed,
                       double finish_tolerance = 1e-9);

/// Snapshot of a fresh instance at its start, with full estimated work.
Snapshot initial_snapshot(const SchedulingInstance& instance);

/// Per-interval, per-task, per-level execution fractions solving the
/// workload partitioning problem, with the optimal dynamic energy in mJ.
struct WorkloadPlan {
    TimeGrid grid;
    std::vector<int> task_ids;
    // fractions[interval][task][level]; zero outside each task's window
    std::vector<std::vector<std::vector<double>>> fractions;
    double objective_mj = 0.0;
};

/// Identifies which (interval, task, level) an LP column stands for.
struct PartitionVariable {
    std::size_t interval = 0;
    std::size_t task = 0; // index into Snapshot::task_ids
    std::size_t level = 0;
};

struct PartitionLp {
    LinearProgram lp;
    std::vector<PartitionVariable> columns;
};

/// Assembles the partitioning LP for a snapshot. Variables are exactly the
/// fractions inside each task's window; one equality per task forces its
/// remaining work to complete, inequality rows bound per-task time shares
/// by 1 and per-interval totals by the processor count, and the objective
/// prices each fraction at interval length times power above idle.
PartitionLp build_partition_lp(const Snapshot& snapshot);

/// Solves the partitioning problem. Returns nullopt when the remaining
/// workload cannot meet every deadline even at full speed on all
/// processors.
std::optional<WorkloadPlan> solve_partition(const Snapshot& snapshot);

} // namespace lpdvfs
