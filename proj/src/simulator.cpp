#include "lpdvfs/simulator.hpp"

#include "lpdvfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpdvfs {

namespace {

constexpr double kFinishTolerance = 1e-9;
constexpr double kTimeTieTolerance = 1e-9;

double segment_start(const TimeGrid& grid, std::size_t interval, const Segment& seg) {
    return grid.points[interval] + seg.begin * grid.delta(interval);
}

double segment_end(const TimeGrid& grid, std::size_t interval, const Segment& seg) {
    return grid.points[interval] + seg.end * grid.delta(interval);
}

} // namespace

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::OpenLoop: return "open-loop";
    case Mode::Feedback: return "feedback";
    case Mode::Ideal: return "ideal";
    }
    return "?";
}

void validate(const ScenarioConfig& config) {
    validate(config.instance);
    for (const auto& task : config.instance.tasks) {
        const double g = config.gamma_for(task.id);
        if (!(g > 0.0) || g > 1.0) {
            throw ValidationError("gamma for task " + std::to_string(task.id) +
                                  " must lie in (0, 1]");
        }
    }
    if (config.mode == Mode::Feedback && !config.replan_on_finish && !config.replan_on_arrival) {
        throw ValidationError("feedback mode needs at least one re-planning event");
    }
}

SimEvent next_event(const ExecutionState& state, const IntervalSchedule& schedule,
                    const TimeGrid& grid, std::size_t interval, const ProcessorModel& model) {
    const double t_now = state.t_now;

    SimEvent boundary{SimEventKind::Boundary, grid.points[interval + 1], -1};

    // Earliest unseen arrival.
    SimEvent arrival{SimEventKind::Arrival, std::numeric_limits<double>::infinity(), -1};
    for (const auto& [id, run] : state.tasks) {
        if (run.arrival_seen) continue;
        const double at = std::max(run.arrival, t_now);
        if (at < arrival.time) {
            arrival.time = at;
            arrival.task = id;
        }
    }

    // Earliest in-segment completion, walking each task's segments in time
    // order and integrating speed against its remaining actual work.
    SimEvent completion{SimEventKind::Completion, std::numeric_limits<double>::infinity(), -1};
    std::vector<Segment> sorted = schedule.segments;
    std::sort(sorted.begin(), sorted.end(),
              [](const Segment& a, const Segment& b) { return a.begin < b.begin; });
    for (const auto& [id, run] : state.tasks) {
        if (run.finished) continue;
        double work_left = run.target - run.executed;
        double found = std::numeric_limits<double>::infinity();
        if (work_left <= kFinishTolerance) {
            found = t_now; // reached its target, event not yet processed
        } else {
            for (const auto& seg : sorted) {
                if (seg.task != id) continue;
                const double lo = std::max(segment_start(grid, interval, seg), t_now);
                const double hi = segment_end(grid, interval, seg);
                if (hi <= lo) continue;
                const double speed = model.speed(seg.level);
                const double need = work_left / speed;
                if (need <= (hi - lo) + kTimeTieTolerance) {
                    found = std::min(lo + need, grid.points[interval + 1]);
                    break;
                }
                work_left -= speed * (hi - lo);
            }
        }
        if (found < completion.time - kTimeTieTolerance ||
            (found < completion.time + kTimeTieTolerance && completion.task >= 0 &&
             id < completion.task)) {
            completion.time = std::min(found, completion.time);
            completion.task = id;
        }
    }

    SimEvent picked = boundary;
    if (arrival.task >= 0 && arrival.time <= picked.time + kTimeTieTolerance) picked = arrival;
    if (completion.task >= 0 && completion.time <= picked.time + kTimeTieTolerance) {
        picked = completion;
    }
    return picked;
}

EnergyReport energy_report(std::span<const ExecutedSlice> slices, const ProcessorModel& model,
                           int processors, double horizon_s) {
    EnergyReport report;
    report.horizon_s = horizon_s;
    for (const auto& slice : slices) {
        report.dynamic_mj += slice.duration() * model.dynamic_power_mw(slice.level);
        report.busy_time_s[slice.task] += slice.duration();
    }
    report.total_mj = report.dynamic_mj + processors * horizon_s * model.idle_mw;
    return report;
}

namespace {

struct ActivePlan {
    WorkloadPlan plan;
    std::vector<IntervalSchedule> schedules;
};

class Simulation {
  public:
    explicit Simulation(const ScenarioConfig& config) : config_(config) {
        validate(config);
        for (const auto& task : config.instance.tasks) {
            TaskRun run;
            run.arrival = task.arrival;
            run.deadline = task.deadline();
            run.target = config.gamma_for(task.id) * task.est_min_exec;
            run.estimate = config.mode == Mode::Ideal ? run.target : task.est_min_exec;
            state_.tasks[task.id] = run;
        }
        planning_ = config.instance;
        for (auto& task : planning_.tasks) {
            task.est_min_exec = state_.tasks[task.id].estimate;
        }
    }

    SimulationTrace run() {
        if (config_.mode == Mode::Ideal) {
            // Admission uses the estimated workload, the same gate the
            // other strategies face; only planning sees the actuals.
            const Snapshot estimated = make_snapshot(config_.instance, 0.0, {});
            if (!solve_partition(estimated)) {
                throw InfeasibleError("initial plan cannot meet all deadlines");
            }
        }
        auto initial = plan_at(0.0);
        if (!initial) throw InfeasibleError("initial plan cannot meet all deadlines");
        ActivePlan active = std::move(*initial);
        const double horizon = active.plan.grid.end();

        state_.t_now = active.plan.grid.start();
        for (auto& [id, run] : state_.tasks) {
            if (run.arrival <= state_.t_now + kTimeTieTolerance) {
                run.arrival_seen = true;
                trace_.events.push_back({TraceEventKind::Arrival, run.arrival, id});
            }
        }

        std::size_t interval = 0;
        while (!all_finished()) {
            if (interval >= active.plan.grid.interval_count()) break;
            const SimEvent ev = next_event(state_, active.schedules[interval],
                                           active.plan.grid, interval, config_.instance.model);
            advance(active, interval, ev.time);

            bool replan = false;
            switch (ev.kind) {
            case SimEventKind::Completion:
                mark_finished(ev.time);
                replan = config_.mode == Mode::Feedback && config_.replan_on_finish;
                break;
            case SimEventKind::Arrival:
                for (auto& [id, run] : state_.tasks) {
                    if (!run.arrival_seen && run.arrival <= ev.time + kTimeTieTolerance) {
                        run.arrival_seen = true;
                        trace_.events.push_back({TraceEventKind::Arrival, run.arrival, id});
                    }
                }
                replan = config_.mode == Mode::Feedback && config_.replan_on_arrival;
                break;
            case SimEventKind::Boundary:
                ++interval;
                flag_misses(ev.time);
                break;
            }

            if (replan && !all_finished()) {
                flag_misses(ev.time);
                auto next = plan_at(ev.time);
                if (!next) break; // every remaining task is already past its deadline
                active = std::move(*next);
                interval = 0;
            }
        }

        flag_misses(std::numeric_limits<double>::infinity());
        std::stable_sort(trace_.events.begin(), trace_.events.end(),
                         [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
        trace_.horizon_s = horizon;
        trace_.energy = energy_report(trace_.slices, config_.instance.model,
                                      config_.instance.processors, horizon);
        for (const auto& [id, run] : state_.tasks) {
            if (run.missed) ++trace_.deadline_misses;
        }
        return std::move(trace_);
    }

  private:
    bool all_finished() const {
        for (const auto& [id, run] : state_.tasks) {
            if (!run.finished) return false;
        }
        return true;
    }

    // Re-plans from scratch at time t with the work done so far. Finished
    // tasks report their full planning estimate so the snapshot drops them.
    std::optional<ActivePlan> plan_at(double t) {
        std::map<int, double> done;
        for (const auto& [id, run] : state_.tasks) {
            done[id] = run.finished ? run.estimate : run.executed;
        }
        std::optional<Snapshot> snapshot;
        try {
            snapshot = make_snapshot(planning_, t, done);
        } catch (const EmptyHorizonError&) {
            return std::nullopt;
        }
        auto plan = solve_partition(*snapshot);
        if (!plan) {
            if (t <= 0.0) return std::nullopt; // initial infeasibility, reported by caller
            throw std::logic_error("re-plan infeasible although actual work never exceeds "
                                   "estimates; scheduler defect");
        }
        ++trace_.solve_count;
        trace_.events.push_back({TraceEventKind::Plan, t, -1});
        ActivePlan active;
        active.schedules = order_plan(*plan, config_.instance.processors);
        active.plan = std::move(*plan);
        return active;
    }

    // Executes the interval's segments over [state_.t_now, t_until]. Each
    // task runs until its actual work target; dead segment remainders stay
    // idle. Segments are visited in time order so per-task accumulation is
    // chronological.
    void advance(const ActivePlan& active, std::size_t interval, double t_until) {
        const double t_from = state_.t_now;
        if (t_until <= t_from) return; // never step backward

        const auto& grid = active.plan.grid;
        std::vector<Segment> sorted = active.schedules[interval].segments;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Segment& a, const Segment& b) {
                      if (a.begin != b.begin) return a.begin < b.begin;
                      return a.processor < b.processor;
                  });
        for (const auto& seg : sorted) {
            TaskRun& run = state_.tasks.at(seg.task);
            if (run.finished) continue;
            const double lo = std::max(segment_start(grid, interval, seg), t_from);
            const double hi = std::min(segment_end(grid, interval, seg), t_until);
            if (hi <= lo) continue;
            const double speed = config_.instance.model.speed(seg.level);
            const double work_left = run.target - run.executed;
            if (work_left <= 0.0) continue;
            const double span = std::min(hi - lo, work_left / speed);
            if (span <= 0.0) continue;
            record_slice({seg.processor, seg.task, seg.level, speed, lo, lo + span});
            run.executed = std::min(run.executed + speed * span, run.target);
        }
        state_.t_now = t_until;
    }

    void record_slice(ExecutedSlice slice) {
        if (!trace_.slices.empty()) {
            ExecutedSlice& last = trace_.slices.back();
            if (last.processor == slice.processor && last.task == slice.task &&
                last.level == slice.level && std::abs(last.end - slice.start) <= 1e-12) {
                last.end = slice.end;
                return;
            }
        }
        trace_.slices.push_back(slice);
    }

    void mark_finished(double time) {
        for (auto& [id, run] : state_.tasks) {
            if (!run.finished && run.executed >= run.target - kFinishTolerance) {
                run.finished = true;
                run.executed = run.target;
                trace_.events.push_back({TraceEventKind::Finish, time, id});
            }
        }
    }

    void flag_misses(double t) {
        for (auto& [id, run] : state_.tasks) {
            if (!run.finished && !run.missed && run.deadline <= t + kFinishTolerance) {
                run.missed = true;
                trace_.events.push_back({TraceEventKind::DeadlineMiss, run.deadline, id});
            }
        }
    }

    ScenarioConfig config_;
    SchedulingInstance planning_;
    ExecutionState state_;
    SimulationTrace trace_;
};

} // namespace

SimulationTrace simulate(const ScenarioConfig& config) {
    Simulation sim(config);
    return sim.run();
}

} // namespace lpdvfs
