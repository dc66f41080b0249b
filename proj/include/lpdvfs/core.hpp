#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lpdvfs {

/// An aperiodic real-time task. It arrives at `arrival`, carries
/// `est_min_exec` seconds of work when executed at full speed, and must
/// finish within `rel_deadline` seconds of its arrival.
struct Task {
    int id = 0;
    double arrival = 0.0;      // seconds, >= 0
    double est_min_exec = 0.0; // seconds at speed 1, > 0
    double rel_deadline = 0.0; // seconds, > 0

    double deadline() const { return arrival + rel_deadline; }
    double density() const { return est_min_exec / rel_deadline; }
};

void validate(const Task& task);

/// One operating point of a DVFS processor: normalized speed (f / f_max)
/// and the active power drawn while executing at that speed.
struct SpeedLevel {
    double speed = 0.0;     // in (0, 1], strictly increasing across levels
    double active_mw = 0.0; // milliwatts
};

/// A homogeneous DVFS processor type: discrete non-idle speed levels plus
/// a speed-independent idle power. The last level always runs at speed 1.
struct ProcessorModel {
    std::string name;
    double f_max_mhz = 0.0;
    double idle_mw = 0.0;
    std::vector<SpeedLevel> levels;

    std::size_t level_count() const { return levels.size(); }
    double speed(std::size_t level) const { return levels[level].speed; }

    /// Power above idle while executing at `level`; the quantity that
    /// actually varies with scheduling decisions.
    double dynamic_power_mw(std::size_t level) const {
        return levels[level].active_mw - idle_mw;
    }
};

void validate(const ProcessorModel& model);

/// A scheduling problem: n tasks on m identical processors of one model.
struct SchedulingInstance {
    std::vector<Task> tasks;
    ProcessorModel model;
    int processors = 1;
};

void validate(const SchedulingInstance& instance);

/// Half-open range of grid interval indices a task may execute in.
struct TaskWindow {
    std::size_t first = 0; // index of the interval starting at max(arrival, t_start)
    std::size_t last = 0;  // index of the interval ending at the absolute deadline
};

/// Points closer than this merge into one grid point.
inline constexpr double kGridMergeTolerance = 1e-9;

/// The planning grid: sorted distinct time points made of the start time
/// and every task arrival/deadline beyond it, plus per-task windows.
struct TimeGrid {
    std::vector<double> points;
    std::map<int, TaskWindow> windows; // keyed by task id

    std::size_t interval_count() const {
        return points.empty() ? 0 : points.size() - 1;
    }
    double delta(std::size_t interval) const {
        return points[interval + 1] - points[interval];
    }
    double start() const { return points.front(); }
    double end() const { return points.back(); }
};

/// Builds the grid for planning at `t_start`. Tasks whose absolute
/// deadline does not lie beyond `t_start` are dropped; arrivals in the
/// past are clamped to `t_start`.
///
/// Throws EmptyHorizonError when no task deadline exceeds `t_start`.
TimeGrid build_time_grid(std::span<const Task> tasks, double t_start);

/// Sum of task densities (work / relative deadline); zero for an empty set.
double taskset_density(std::span<const Task> tasks);

/// Energy totals over a simulation horizon. `dynamic_mj` counts busy time
/// weighted by power above idle; `total_mj` adds the constant idle draw of
/// all processors over the whole horizon.
struct EnergyReport {
    double dynamic_mj = 0.0;
    double total_mj = 0.0;
    double horizon_s = 0.0;
    std::map<int, double> busy_time_s; // per task id
};

} // namespace lpdvfs
