#pragma once

#include "lpdvfs/lp_solver.hpp"
#include "lpdvfs/ordering.hpp"
#include "lpdvfs/partition.hpp"
#include "lpdvfs/simulator.hpp"

#include <span>
#include <vector>

namespace lpdvfs {

struct CheckReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Brute-force LP optimum by enumerating every basic solution: each choice
/// of n active constraints (rows and bounds) is solved as a square system,
/// filtered for feasibility, and the best objective wins. Independent of
/// the simplex path; intended as its oracle at tiny scale.
///
/// Throws TooLargeError beyond 6 variables or 8 rows.
LpOutcome enumerate_lp_optimum(const LinearProgram& lp);

/// Verifies that an ordered schedule is a faithful continuous-time
/// realization of its fractional plan: fraction mass is recovered exactly
/// per (task, level, interval), no task runs on two processors at once, no
/// processor runs two tasks at once, every task's integrated speed covers
/// its remaining work inside its window, and the integrated cost of the
/// timeline equals the plan's objective to 1e-9 mJ.
CheckReport roundtrip_check(const WorkloadPlan& plan, std::span<const IntervalSchedule> schedules,
                            const Snapshot& snapshot);

/// Audits an executed trace against the instance: processor exclusivity,
/// no parallel self-execution, execution within [arrival, deadline], and
/// per-task work conservation against gamma-scaled targets.
CheckReport audit_trace(const SimulationTrace& trace, const SchedulingInstance& instance,
                        const std::map<int, double>& gamma);

} // namespace lpdvfs
