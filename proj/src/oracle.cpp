#include "lpdvfs/oracle.hpp"

#include "lpdvfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lpdvfs {

namespace {

constexpr double kEnumFeasTolerance = 1e-7;
constexpr double kMassTolerance = 1e-12;
constexpr double kWorkTolerance = 1e-7;
constexpr double kCostTolerance = 1e-9;

// Solves a dense square system in place; returns false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
        }
        if (std::abs(a[best][col]) < 1e-10) return false;
        std::swap(a[col], a[best]);
        std::swap(b[col], b[best]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

struct FlatConstraint {
    std::vector<double> coeffs;
    double rhs = 0.0;
};

} // namespace

LpOutcome enumerate_lp_optimum(const LinearProgram& lp) {
    const std::size_t n = lp.variable_count();
    if (n > 6) throw TooLargeError("enumeration limited to 6 variables");
    if (lp.eq_rows.size() + lp.ub_rows.size() > 8) {
        throw TooLargeError("enumeration limited to 8 constraint rows");
    }
    if (lp.lower.size() != n || lp.upper.size() != n) {
        throw DimensionMismatchError("bound vectors do not match variable count");
    }

    std::vector<FlatConstraint> all;
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
        all.push_back({lp.eq_rows[r], lp.eq_rhs[r]});
    }
    for (std::size_t r = 0; r < lp.ub_rows.size(); ++r) {
        all.push_back({lp.ub_rows[r], lp.ub_rhs[r]});
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> unit(n, 0.0);
        unit[j] = 1.0;
        all.push_back({unit, lp.lower[j]});
        all.push_back({unit, lp.upper[j]});
    }

    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += lp.eq_rows[r][j] * x[j];
            if (std::abs(lhs - lp.eq_rhs[r]) > kEnumFeasTolerance) return false;
        }
        for (std::size_t r = 0; r < lp.ub_rows.size(); ++r) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += lp.ub_rows[r][j] * x[j];
            if (lhs > lp.ub_rhs[r] + kEnumFeasTolerance) return false;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j] < lp.lower[j] - kEnumFeasTolerance) return false;
            if (x[j] > lp.upper[j] + kEnumFeasTolerance) return false;
        }
        return true;
    };

    LpOutcome best;
    best.status = LpStatus::Infeasible;

    // Every size-n subset of constraints treated as active.
    std::vector<std::size_t> pick(n);
    const std::size_t total = all.size();
    auto evaluate = [&](const std::vector<std::size_t>& subset) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t k : subset) {
            a.push_back(all[k].coeffs);
            b.push_back(all[k].rhs);
        }
        std::vector<double> x;
        if (!solve_square(std::move(a), std::move(b), x)) return;
        if (!feasible(x)) return;
        double obj = 0.0;
        for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
        if (best.status != LpStatus::Optimal || obj < best.objective - 1e-12) {
            best.status = LpStatus::Optimal;
            best.objective = obj;
            best.x = x;
        }
    };

    // Iterative combination walk over all size-n subsets.
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        evaluate(pick);
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == total - n + (i - 1)) --i;
        if (i == 0) break;
        --i;
        ++pick[i];
        for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

CheckReport roundtrip_check(const WorkloadPlan& plan, std::span<const IntervalSchedule> schedules,
                            const Snapshot& snapshot) {
    CheckReport report;
    auto flag = [&](const std::string& invariant, const std::string& detail) {
        report.violations.push_back({invariant, detail});
    };

    const auto& grid = plan.grid;
    const auto& model = snapshot.model;
    const std::size_t levels = model.level_count();
    const std::size_t tasks = plan.task_ids.size();

    if (schedules.size() != grid.interval_count()) {
        flag("schedule-count", "one ordered schedule per grid interval expected");
        return report;
    }

    // Plan-level bounds: per-task time share and machine capacity.
    for (std::size_t mu = 0; mu < grid.interval_count(); ++mu) {
        double load = 0.0;
        for (std::size_t t = 0; t < tasks; ++t) {
            double share = 0.0;
            for (std::size_t q = 0; q < levels; ++q) share += plan.fractions[mu][t][q];
            if (share > 1.0 + 1e-9) {
                std::ostringstream msg;
                msg << "task " << plan.task_ids[t] << " share " << share << " in interval " << mu;
                flag("task-share", msg.str());
            }
            load += share;
        }
        if (load > snapshot.processors + 1e-9) {
            std::ostringstream msg;
            msg << "interval " << mu << " load " << load << " on " << snapshot.processors
                << " processors";
            flag("capacity", msg.str());
        }
    }

    double timeline_cost = 0.0;
    std::map<int, double> integrated_work;

    for (std::size_t mu = 0; mu < grid.interval_count(); ++mu) {
        const auto& schedule = schedules[mu];
        if (schedule.interval != mu) flag("interval-index", "schedule tagged with wrong interval");

        // Fraction mass recovered exactly per (task, level).
        std::map<std::pair<int, std::size_t>, double> mass;
        for (const auto& seg : schedule.segments) {
            mass[{seg.task, seg.level}] += seg.end - seg.begin;
            timeline_cost += (seg.end - seg.begin) * grid.delta(mu) * model.dynamic_power_mw(seg.level);
            integrated_work[seg.task] += (seg.end - seg.begin) * grid.delta(mu) * model.speed(seg.level);
        }
        for (std::size_t t = 0; t < tasks; ++t) {
            for (std::size_t q = 0; q < levels; ++q) {
                const double planned = plan.fractions[mu][t][q] > kFractionDropTolerance
                                           ? plan.fractions[mu][t][q]
                                           : 0.0;
                double scheduled = 0.0;
                if (auto it = mass.find({plan.task_ids[t], q}); it != mass.end()) {
                    scheduled = it->second;
                }
                if (std::abs(scheduled - planned) > kMassTolerance) {
                    std::ostringstream msg;
                    msg << "interval " << mu << " task " << plan.task_ids[t] << " level " << q
                        << ": timeline " << scheduled << " vs plan " << planned;
                    flag("fraction-recovery", msg.str());
                }
            }
        }

        // Exclusivity both ways, taking segments as half-open in fraction space.
        std::map<int, std::vector<Segment>> by_proc;
        std::map<int, std::vector<Segment>> by_task;
        for (const auto& seg : schedule.segments) {
            by_proc[seg.processor].push_back(seg);
            by_task[seg.task].push_back(seg);
        }
        auto overlap_scan = [&](std::map<int, std::vector<Segment>>& groups,
                                const std::string& invariant) {
            for (auto& [key, segs] : groups) {
                std::sort(segs.begin(), segs.end(),
                          [](const Segment& a, const Segment& b) { return a.begin < b.begin; });
                for (std::size_t i = 1; i < segs.size(); ++i) {
                    if (segs[i].begin < segs[i - 1].end - kMassTolerance) {
                        std::ostringstream msg;
                        msg << "interval " << mu << " key " << key << " around fraction "
                            << segs[i].begin;
                        flag(invariant, msg.str());
                    }
                }
            }
        };
        overlap_scan(by_proc, "processor-exclusivity");
        overlap_scan(by_task, "task-exclusivity");

        // Execution confined to each task's window.
        for (const auto& seg : schedule.segments) {
            const auto it = grid.windows.find(seg.task);
            if (it == grid.windows.end() || mu < it->second.first || mu >= it->second.last) {
                if (seg.end - seg.begin > kMassTolerance) {
                    std::ostringstream msg;
                    msg << "task " << seg.task << " scheduled in interval " << mu
                        << " outside its window";
                    flag("window", msg.str());
                }
            }
        }
    }

    // Work balance: integrated speed equals remaining work per task.
    for (std::size_t t = 0; t < tasks; ++t) {
        const int id = plan.task_ids[t];
        const double got = integrated_work.count(id) ? integrated_work[id] : 0.0;
        if (std::abs(got - snapshot.remaining[t]) > kWorkTolerance) {
            std::ostringstream msg;
            msg << "task " << id << " integrates " << got << " of " << snapshot.remaining[t]
                << " required";
            flag("work-balance", msg.str());
        }
    }

    if (std::abs(timeline_cost - plan.objective_mj) > kCostTolerance) {
        std::ostringstream msg;
        msg << "timeline cost " << timeline_cost << " mJ vs plan objective " << plan.objective_mj
            << " mJ";
        flag("cost-equality", msg.str());
    }

    return report;
}

CheckReport audit_trace(const SimulationTrace& trace, const SchedulingInstance& instance,
                        const std::map<int, double>& gamma) {
    CheckReport report;
    auto flag = [&](const std::string& invariant, const std::string& detail) {
        report.violations.push_back({invariant, detail});
    };
    constexpr double kTol = 1e-9;

    std::map<int, const Task*> tasks;
    for (const auto& task : instance.tasks) tasks[task.id] = &task;

    std::map<int, std::vector<ExecutedSlice>> by_proc;
    std::map<int, std::vector<ExecutedSlice>> by_task;
    for (const auto& slice : trace.slices) {
        if (!tasks.count(slice.task)) {
            flag("unknown-task", "slice for task " + std::to_string(slice.task));
            continue;
        }
        if (slice.start < -kTol || slice.end > trace.horizon_s + kTol || slice.end < slice.start) {
            std::ostringstream msg;
            msg << "task " << slice.task << " slice [" << slice.start << ", " << slice.end << "]";
            flag("slice-range", msg.str());
        }
        by_proc[slice.processor].push_back(slice);
        by_task[slice.task].push_back(slice);
    }

    auto overlap_scan = [&](std::map<int, std::vector<ExecutedSlice>>& groups,
                            const std::string& invariant) {
        for (auto& [key, slices] : groups) {
            std::sort(slices.begin(), slices.end(),
                      [](const ExecutedSlice& a, const ExecutedSlice& b) {
                          return a.start < b.start;
                      });
            for (std::size_t i = 1; i < slices.size(); ++i) {
                if (slices[i].start < slices[i - 1].end - kTol) {
                    std::ostringstream msg;
                    msg << "key " << key << " near t=" << slices[i].start;
                    flag(invariant, msg.str());
                }
            }
        }
    };
    overlap_scan(by_proc, "processor-overlap");
    overlap_scan(by_task, "parallel-self-execution");

    std::map<int, double> finish_time;
    std::map<int, bool> missed;
    for (const auto& ev : trace.events) {
        if (ev.kind == TraceEventKind::Finish) finish_time[ev.task] = ev.time;
        if (ev.kind == TraceEventKind::DeadlineMiss) missed[ev.task] = true;
    }

    for (const auto& [id, task] : tasks) {
        double g = 1.0;
        if (auto it = gamma.find(id); it != gamma.end()) g = it->second;
        const double target = g * task->est_min_exec;

        double work = 0.0;
        if (auto it = by_task.find(id); it != by_task.end()) {
            for (const auto& slice : it->second) {
                if (slice.start < task->arrival - kTol) {
                    std::ostringstream msg;
                    msg << "task " << id << " runs at " << slice.start << " before arrival "
                        << task->arrival;
                    flag("early-execution", msg.str());
                }
                if (slice.end > task->deadline() + kTol) {
                    std::ostringstream msg;
                    msg << "task " << id << " runs until " << slice.end << " past deadline "
                        << task->deadline();
                    flag("late-execution", msg.str());
                }
                work += slice.duration() * slice.speed;
            }
        }

        if (finish_time.count(id)) {
            if (std::abs(work - target) > kWorkTolerance) {
                std::ostringstream msg;
                msg << "task " << id << " executed " << work << " of target " << target;
                flag("work-conservation", msg.str());
            }
            if (finish_time[id] > task->deadline() + kTol) {
                std::ostringstream msg;
                msg << "task " << id << " finished at " << finish_time[id] << " past deadline "
                    << task->deadline();
                flag("deadline", msg.str());
            }
        } else if (!missed.count(id)) {
            flag("unaccounted-task",
                 "task " + std::to_string(id) + " neither finished nor flagged missed");
        }
    }

    return report;
}

} // namespace lpdvfs
