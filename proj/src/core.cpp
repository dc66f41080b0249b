#include "lpdvfs/core.hpp"

#include "lpdvfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lpdvfs {

void validate(const Task& task) {
    if (!std::isfinite(task.arrival) || task.arrival < 0.0) {
        throw ValidationError("task " + std::to_string(task.id) +
                              ": arrival must be finite and >= 0");
    }
    if (!std::isfinite(task.est_min_exec) || task.est_min_exec <= 0.0) {
        throw ValidationError("task " + std::to_string(task.id) +
                              ": execution time must be finite and > 0");
    }
    if (!std::isfinite(task.rel_deadline) || task.rel_deadline <= 0.0) {
        throw ValidationError("task " + std::to_string(task.id) +
                              ": relative deadline must be finite and > 0");
    }
}

void validate(const ProcessorModel& model) {
    if (model.levels.empty()) {
        throw ValidationError("processor '" + model.name + "': needs at least one speed level");
    }
    if (model.f_max_mhz <= 0.0) {
        throw ValidationError("processor '" + model.name + "': f_max must be > 0");
    }
    if (model.idle_mw < 0.0) {
        throw ValidationError("processor '" + model.name + "': idle power must be >= 0");
    }
    double prev_speed = 0.0;
    double prev_power = 0.0;
    for (std::size_t q = 0; q < model.levels.size(); ++q) {
        const auto& lv = model.levels[q];
        if (lv.speed <= prev_speed) {
            throw ValidationError("processor '" + model.name +
                                  "': speeds must be strictly increasing");
        }
        if (lv.speed > 1.0) {
            throw ValidationError("processor '" + model.name + "': speeds must be <= 1");
        }
        if (q > 0 && lv.active_mw <= prev_power) {
            throw ValidationError("processor '" + model.name +
                                  "': active power must be strictly increasing with speed");
        }
        if (lv.active_mw < model.idle_mw) {
            throw ValidationError("processor '" + model.name +
                                  "': active power below idle power at speed " +
                                  std::to_string(lv.speed));
        }
        prev_speed = lv.speed;
        prev_power = lv.active_mw;
    }
    if (model.levels.back().speed != 1.0) {
        throw ValidationError("processor '" + model.name + "': top speed must equal 1.0");
    }
}

void validate(const SchedulingInstance& instance) {
    validate(instance.model);
    if (instance.processors < 1) {
        throw ValidationError("instance: processor count must be >= 1");
    }
    std::set<int> ids;
    for (const auto& task : instance.tasks) {
        validate(task);
        if (!ids.insert(task.id).second) {
            throw ValidationError("instance: duplicate task id " + std::to_string(task.id));
        }
    }
}

namespace {

// Nearest grid index to `t`; points are sorted and distinct.
std::size_t nearest_index(const std::vector<double>& points, double t) {
    auto it = std::lower_bound(points.begin(), points.end(), t);
    if (it == points.end()) return points.size() - 1;
    if (it == points.begin()) return 0;
    std::size_t hi = static_cast<std::size_t>(it - points.begin());
    return (t - points[hi - 1] <= points[hi] - t) ? hi - 1 : hi;
}

} // namespace

TimeGrid build_time_grid(std::span<const Task> tasks, double t_start) {
    std::vector<double> raw{t_start};
    bool any_future = false;
    for (const auto& task : tasks) {
        if (task.deadline() <= t_start + kGridMergeTolerance) continue;
        any_future = true;
        if (task.arrival > t_start) raw.push_back(task.arrival);
        raw.push_back(task.deadline());
    }
    if (!any_future) {
        std::ostringstream msg;
        msg << "no task deadline beyond t=" << t_start;
        throw EmptyHorizonError(msg.str());
    }
    std::sort(raw.begin(), raw.end());

    TimeGrid grid;
    grid.points.push_back(raw.front());
    for (double p : raw) {
        if (p - grid.points.back() > kGridMergeTolerance) grid.points.push_back(p);
    }

    for (const auto& task : tasks) {
        if (task.deadline() <= t_start + kGridMergeTolerance) continue;
        TaskWindow window;
        window.first = nearest_index(grid.points, std::max(task.arrival, t_start));
        window.last = nearest_index(grid.points, task.deadline());
        grid.windows[task.id] = window;
    }
    return grid;
}

double taskset_density(std::span<const Task> tasks) {
    double sum = 0.0;
    for (const auto& task : tasks) sum += task.density();
    return sum;
}

} // namespace lpdvfs
