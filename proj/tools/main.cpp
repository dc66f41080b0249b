#include "lpdvfs/errors.hpp"
#include "lpdvfs/experiment.hpp"
#include "lpdvfs/json_io.hpp"
#include "lpdvfs/presets.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct CommonOptions {
    std::string processor = "powerpc405lp";
    int processors = 2;
    std::string taskset = "paper:D=1.25";
    std::string gamma = "0.5";
    std::string mode = "all";
    std::string events = "finish";
    std::string out = "-";
    bool timings = false;
    bool timestamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_taskset, bool with_gamma) {
    cmd->add_option("--processor", opts.processor, "processor preset (powerpc405lp, xscale) or JSON file");
    cmd->add_option("--m", opts.processors, "number of identical processors")
        ->check(CLI::PositiveNumber);
    if (with_taskset) {
        cmd->add_option("--taskset", opts.taskset, "taskset preset (paper:D=<density>) or JSON file");
    }
    if (with_gamma) {
        cmd->add_option("--gamma", opts.gamma, "estimation factor in (0,1], or JSON map file");
    }
    cmd->add_option("--mode", opts.mode, "feedback, open-loop, ideal, or all")
        ->check(CLI::IsMember({"feedback", "open-loop", "ideal", "all"}));
    cmd->add_option("--events", opts.events, "re-plan triggers: finish, arrival, or finish,arrival");
    cmd->add_option("--out", opts.out, "output CSV path, or - for stdout");
    cmd->add_flag("--timings", opts.timings, "add the wall_time_ms column (non-reproducible)");
    cmd->add_flag("--timestamp", opts.timestamp, "prefix the CSV with a generation-time comment");
}

std::vector<lpdvfs::Mode> parse_modes(const std::string& mode) {
    using lpdvfs::Mode;
    if (mode == "feedback") return {Mode::Feedback};
    if (mode == "open-loop") return {Mode::OpenLoop};
    if (mode == "ideal") return {Mode::Ideal};
    return {Mode::Feedback, Mode::OpenLoop, Mode::Ideal};
}

void parse_events(const std::string& events, bool& on_finish, bool& on_arrival) {
    on_finish = false;
    on_arrival = false;
    std::stringstream stream(events);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item == "finish") {
            on_finish = true;
        } else if (item == "arrival") {
            on_arrival = true;
        } else if (!item.empty()) {
            throw lpdvfs::ParseError("unknown event '" + item + "' (expected finish or arrival)");
        }
    }
    if (!on_finish && !on_arrival) {
        throw lpdvfs::ParseError("--events needs at least one of finish, arrival");
    }
}

int emit(const std::vector<lpdvfs::ExperimentRow>& rows, const CommonOptions& opts) {
    lpdvfs::CsvOptions csv;
    csv.with_timings = opts.timings;
    csv.with_timestamp = opts.timestamp;
    if (opts.out == "-") {
        lpdvfs::write_csv(std::cout, rows, csv);
    } else {
        std::ofstream file(opts.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << opts.out << "'\n";
            return 1;
        }
        lpdvfs::write_csv(file, rows, csv);
    }
    bool any_feasible = false;
    for (const auto& row : rows) any_feasible |= row.feasible;
    return any_feasible ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-minimizing multiprocessor DVFS scheduler: plan, order, simulate"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "simulate one taskset at one estimation factor");
    add_common(run, run_opts, true, true);

    CommonOptions sweep_opts;
    std::string axis = "density";
    CLI::App* sweep = app.add_subcommand("sweep", "run a density or gamma sweep");
    sweep->add_option("--axis", axis, "density (built-in tasksets) or gamma (0.1..1.0)")
        ->check(CLI::IsMember({"density", "gamma"}));
    add_common(sweep, sweep_opts, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        using namespace lpdvfs;
        if (*run) {
            const ProcessorModel model = load_processor(run_opts.processor);
            const std::vector<Task> tasks = load_taskset(run_opts.taskset);
            ExperimentSpec spec;
            spec.model = model;
            spec.processors = run_opts.processors;
            spec.modes = parse_modes(run_opts.mode);
            parse_events(run_opts.events, spec.replan_on_finish, spec.replan_on_arrival);
            SweepPoint point;
            point.sweep_value = taskset_density(tasks);
            point.tasks = tasks;
            point.gamma = load_gamma(run_opts.gamma, tasks);
            spec.points.push_back(std::move(point));
            return emit(run_experiment(spec), run_opts);
        }

        const ProcessorModel model = load_processor(sweep_opts.processor);
        ExperimentSpec spec;
        if (axis == "density") {
            char* end = nullptr;
            const double gamma = std::strtod(sweep_opts.gamma.c_str(), &end);
            if (end == sweep_opts.gamma.c_str() || *end != '\0') {
                throw ParseError("a density sweep takes one global --gamma value");
            }
            spec = make_density_sweep(model, sweep_opts.processors, gamma);
        } else {
            const std::vector<Task> tasks = load_taskset(sweep_opts.taskset);
            spec = make_gamma_sweep(model, sweep_opts.processors, tasks);
        }
        spec.modes = parse_modes(sweep_opts.mode);
        parse_events(sweep_opts.events, spec.replan_on_finish, spec.replan_on_arrival);
        return emit(run_experiment(spec), sweep_opts);
    } catch (const lpdvfs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
