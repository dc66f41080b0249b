#pragma once

#include "lpdvfs/core.hpp"
#include "lpdvfs/ordering.hpp"
#include "lpdvfs/partition.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace lpdvfs {

enum class Mode { OpenLoop, Feedback, Ideal };

std::string to_string(Mode mode);

/// One closed- or open-loop run: an instance, how much of each estimate is
/// real work (gamma in (0, 1]), the scheduling strategy, and which events
/// trigger re-planning in Feedback mode.
struct ScenarioConfig {
    SchedulingInstance instance;
    std::map<int, double> gamma; // per task id; missing ids default to 1.0
    Mode mode = Mode::Feedback;
    bool replan_on_finish = true;
    bool replan_on_arrival = false;

    double gamma_for(int task_id) const {
        auto it = gamma.find(task_id);
        return it == gamma.end() ? 1.0 : it->second;
    }
};

void validate(const ScenarioConfig& config);

/// Live progress of one task during simulation. Work is measured in
/// seconds of full-speed execution; running at speed s for wall time t
/// contributes s*t.
struct TaskRun {
    double arrival = 0.0;
    double deadline = 0.0; // absolute
    double estimate = 0.0; // planning amount (full estimate, or actual in Ideal mode)
    double target = 0.0;   // actual amount; execution stops here
    double executed = 0.0;
    bool arrival_seen = false;
    bool finished = false;
    bool missed = false;
};

struct ExecutionState {
    double t_now = 0.0;
    std::map<int, TaskRun> tasks;
};

/// A run of actual execution: task on processor at a level over absolute
/// time. These are what happened, not what was planned.
struct ExecutedSlice {
    int processor = 1;
    int task = 0;
    std::size_t level = 0;
    double speed = 0.0;
    double start = 0.0;
    double end = 0.0;

    double duration() const { return end - start; }
};

enum class TraceEventKind { Plan, Arrival, Finish, DeadlineMiss };

struct TraceEvent {
    TraceEventKind kind = TraceEventKind::Plan;
    double time = 0.0;
    int task = -1; // -1 for plan events
};

struct SimulationTrace {
    std::vector<ExecutedSlice> slices;
    std::vector<TraceEvent> events;
    EnergyReport energy;
    double horizon_s = 0.0;
    int solve_count = 0;
    int deadline_misses = 0;
};

enum class SimEventKind { Completion, Arrival, Boundary };

struct SimEvent {
    SimEventKind kind = SimEventKind::Boundary;
    double time = 0.0;
    int task = -1;
};

/// The earliest upcoming event if the current interval's schedule runs
/// undisturbed from state.t_now: a task reaching its actual work target
/// inside a segment, the next unseen task arrival, or the interval
/// boundary. Equal times (within 1e-9) resolve completion, then arrival,
/// then boundary.
SimEvent next_event(const ExecutionState& state, const IntervalSchedule& schedule,
                    const TimeGrid& grid, std::size_t interval, const ProcessorModel& model);

/// Energy accounting over executed slices: dynamic energy weights busy
/// time by power above idle; total adds the whole-horizon idle draw of all
/// processors.
EnergyReport energy_report(std::span<const ExecutedSlice> slices, const ProcessorModel& model,
                           int processors, double horizon_s);

/// Runs a scenario to completion. Throws InfeasibleError when the initial
/// plan cannot meet all deadlines. Deadline misses during execution are
/// recorded in the trace, not thrown.
SimulationTrace simulate(const ScenarioConfig& config);

} // namespace lpdvfs
