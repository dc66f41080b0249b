#include "lpdvfs/experiment.hpp"

#include "lpdvfs/errors.hpp"
#include "lpdvfs/presets.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <future>
#include <ostream>

namespace lpdvfs {

ExperimentSpec make_density_sweep(const ProcessorModel& model, int processors, double gamma) {
    ExperimentSpec spec;
    spec.model = model;
    spec.processors = processors;
    for (double density : reference_densities()) {
        SweepPoint point;
        point.sweep_value = density;
        point.tasks = reference_taskset(density);
        for (const auto& task : point.tasks) point.gamma[task.id] = gamma;
        spec.points.push_back(std::move(point));
    }
    return spec;
}

ExperimentSpec make_gamma_sweep(const ProcessorModel& model, int processors,
                                const std::vector<Task>& tasks) {
    ExperimentSpec spec;
    spec.model = model;
    spec.processors = processors;
    for (int step = 1; step <= 10; ++step) {
        const double gamma = static_cast<double>(step) / 10.0;
        SweepPoint point;
        point.sweep_value = gamma;
        point.tasks = tasks;
        for (const auto& task : tasks) point.gamma[task.id] = gamma;
        spec.points.push_back(std::move(point));
    }
    return spec;
}

namespace {

std::vector<ExperimentRow> run_point(const ExperimentSpec& spec, const SweepPoint& point) {
    std::vector<ExperimentRow> rows;
    std::map<Mode, double> dynamic_by_mode;

    for (Mode mode : spec.modes) {
        ExperimentRow row;
        row.sweep_value = point.sweep_value;
        row.mode = mode;

        ScenarioConfig config;
        config.instance = SchedulingInstance{point.tasks, spec.model, spec.processors};
        config.gamma = point.gamma;
        config.mode = mode;
        config.replan_on_finish = spec.replan_on_finish;
        config.replan_on_arrival = spec.replan_on_arrival;

        const auto started = std::chrono::steady_clock::now();
        try {
            const SimulationTrace trace = simulate(config);
            row.dynamic_mj = trace.energy.dynamic_mj;
            row.total_mj = trace.energy.total_mj;
            row.deadline_misses = trace.deadline_misses;
            row.solve_count = trace.solve_count;
            dynamic_by_mode[mode] = trace.energy.dynamic_mj;
        } catch (const InfeasibleError&) {
            row.feasible = false;
        }
        const auto ended = std::chrono::steady_clock::now();
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(ended - started).count();
        rows.push_back(row);
    }

    if (auto it = dynamic_by_mode.find(Mode::OpenLoop);
        it != dynamic_by_mode.end() && it->second > 0.0) {
        for (auto& row : rows) {
            if (row.feasible) row.normalized_vs_openloop = row.dynamic_mj / it->second;
        }
    }
    return rows;
}

} // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    validate(spec.model);
    if (spec.modes.empty()) throw ValidationError("experiment needs at least one mode");
    if (spec.points.empty()) throw ValidationError("experiment needs at least one sweep point");

    std::vector<std::vector<ExperimentRow>> grouped(spec.points.size());
    if (spec.parallel && spec.points.size() > 1) {
        std::vector<std::future<std::vector<ExperimentRow>>> futures;
        futures.reserve(spec.points.size());
        for (const auto& point : spec.points) {
            futures.push_back(std::async(std::launch::async,
                                         [&spec, &point] { return run_point(spec, point); }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) grouped[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < spec.points.size(); ++i) {
            grouped[i] = run_point(spec, spec.points[i]);
        }
    }

    std::vector<ExperimentRow> rows;
    for (auto& group : grouped) {
        for (auto& row : group) rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string format_double(double value, const char* fmt) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), fmt, value);
    return buffer;
}

} // namespace

void write_csv(std::ostream& out, std::span<const ExperimentRow> rows,
               const CsvOptions& options) {
    const char* eol = "\r\n";
    if (options.with_timestamp) {
        char stamp[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        out << "# generated " << stamp << eol;
    }
    out << "sweep_value,mode,dynamic_energy_mJ,total_energy_mJ,normalized_vs_openloop,"
           "deadline_misses,solve_count";
    if (options.with_timings) out << ",wall_time_ms";
    out << ",status" << eol;

    for (const auto& row : rows) {
        out << format_double(row.sweep_value, "%.2f") << ',' << to_string(row.mode) << ',';
        if (row.feasible) {
            out << format_double(row.dynamic_mj, "%.6f") << ','
                << format_double(row.total_mj, "%.6f") << ',';
            if (row.normalized_vs_openloop) {
                out << format_double(*row.normalized_vs_openloop, "%.6f");
            }
            out << ',' << row.deadline_misses << ',' << row.solve_count;
        } else {
            out << ",,,,";
        }
        if (options.with_timings) {
            out << ',' << (row.feasible ? format_double(row.wall_time_ms, "%.3f") : "");
        }
        out << ',' << (row.feasible ? "ok" : "infeasible") << eol;
    }
}

} // namespace lpdvfs
