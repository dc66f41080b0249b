#pragma once

#include "lpdvfs/core.hpp"
#include "lpdvfs/simulator.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpdvfs {

/// One point of a sweep: the value reported in the first CSV column plus
/// the taskset and estimation factors to simulate.
struct SweepPoint {
    double sweep_value = 0.0;
    std::vector<Task> tasks;
    std::map<int, double> gamma;
};

struct ExperimentSpec {
    ProcessorModel model;
    int processors = 1;
    std::vector<SweepPoint> points;
    std::vector<Mode> modes = {Mode::Feedback, Mode::OpenLoop, Mode::Ideal};
    bool replan_on_finish = true;
    bool replan_on_arrival = false;
    bool parallel = true; // sweep points fan out across threads
};

/// Density sweep over the built-in reference tasksets at one gamma.
ExperimentSpec make_density_sweep(const ProcessorModel& model, int processors, double gamma);

/// Gamma sweep {0.1, ..., 1.0} over one taskset.
ExperimentSpec make_gamma_sweep(const ProcessorModel& model, int processors,
                                const std::vector<Task>& tasks);

struct ExperimentRow {
    double sweep_value = 0.0;
    Mode mode = Mode::Feedback;
    bool feasible = true;
    double dynamic_mj = 0.0;
    double total_mj = 0.0;
    std::optional<double> normalized_vs_openloop;
    int deadline_misses = 0;
    int solve_count = 0;
    double wall_time_ms = 0.0;
};

/// Runs every (sweep point, mode) scenario. Rows come back grouped by
/// point in spec order, modes in spec order; an infeasible scenario
/// produces a row with feasible=false rather than an error.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

struct CsvOptions {
    bool with_timings = false;  // adds the wall_time_ms column
    bool with_timestamp = false; // adds a leading generation-time comment
};

/// Writes rows as RFC-4180 CSV (CRLF line ends, fixed column order). The
/// body is byte-stable across runs unless timings are enabled.
void write_csv(std::ostream& out, std::span<const ExperimentRow> rows,
               const CsvOptions& options = {});

} // namespace lpdvfs
