#pragma once

#include "lpdvfs/partition.hpp"

#include <string>
#include <vector>

namespace lpdvfs {

/// A contiguous run of one task at one speed level on one processor,
/// expressed as fractions of the owning interval. The absolute times are
/// interval_start + fraction * interval_length.
struct Segment {
    int processor = 1; // 1-based
    int task = 0;      // task id
    std::size_t level = 0;
    double begin = 0.0; // fraction in [0, 1]
    double end = 0.0;   // fraction in [0, 1], >= begin
};

/// All segments of one grid interval.
struct IntervalSchedule {
    std::size_t interval = 0;
    std::vector<Segment> segments;
};

/// Execution fractions of one interval: fractions[task][level], with
/// task_ids naming the rows.
struct IntervalWorkload {
    std::vector<int> task_ids;
    std::vector<std::vector<double>> fractions;
};

struct Violation {
    std::string invariant;
    std::string detail;
};

/// Items smaller than this are dropped before layout; simplex residue.
inline constexpr double kFractionDropTolerance = 1e-12;

/// Lays the fractions along a line (ascending task id, levels grouped per
/// task in ascending order), cuts at each unit boundary, and assigns chunk
/// k to processor k. An item crossing a boundary becomes two segments on
/// adjacent processors; an item ending within 1e-12 of a boundary does not
/// split. Throws CapacityExceededError when a task's total exceeds 1 or
/// the grand total exceeds the processor count.
IntervalSchedule wrap_around(const IntervalWorkload& workload, int processors,
                             std::size_t interval_index = 0);

/// Checks an interval schedule against its source fractions: per-processor
/// ordering without overlap, no task running on two processors at once,
/// and per-(task, level) conservation of fraction mass. Returns one entry
/// per violated invariant; empty means valid.
std::vector<Violation> validate_interval(const IntervalSchedule& schedule,
                                         const IntervalWorkload& workload, int processors);

/// Orders every interval of a plan.
std::vector<IntervalSchedule> order_plan(const WorkloadPlan& plan, int processors);

/// The fractions of one plan interval, as wrap_around input.
IntervalWorkload plan_interval_workload(const WorkloadPlan& plan, std::size_t interval);

} // namespace lpdvfs
