#include "lpdvfs/presets.hpp"

#include "lpdvfs/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace lpdvfs {

ProcessorModel powerpc405lp_model() {
    ProcessorModel model;
    model.name = "powerpc405lp";
    model.f_max_mhz = 333.0;
    model.idle_mw = 12.0;
    model.levels = {{0.1, 19.0}, {0.3, 72.0}, {0.8, 600.0}, {1.0, 750.0}};
    return model;
}

ProcessorModel xscale_model() {
    ProcessorModel model;
    model.name = "xscale";
    model.f_max_mhz = 1000.0;
    model.idle_mw = 40.0;
    model.levels = {{0.15, 80.0}, {0.4, 170.0}, {0.6, 400.0}, {0.8, 900.0}, {1.0, 1600.0}};
    return model;
}

ProcessorModel processor_preset(const std::string& name) {
    if (name == "powerpc405lp") return powerpc405lp_model();
    if (name == "xscale") return xscale_model();
    throw UnknownPresetError("unknown processor preset '" + name +
                             "' (expected powerpc405lp or xscale)");
}

namespace {

struct TasksetRow {
    double density;
    Task tasks[3];
};

const TasksetRow kReferenceTasksets[] = {
    {0.50, {{1, 0, 1, 5}, {2, 0, 2, 10}, {3, 0, 1.5, 15}}},
    {0.75, {{1, 0, 1, 5}, {2, 0, 3.5, 10}, {3, 0, 3, 15}}},
    {1.00, {{1, 0, 2, 5}, {2, 0, 4, 10}, {3, 0, 3, 15}}},
    {1.25, {{1, 0, 1, 5}, {2, 0, 6.5, 10}, {3, 0, 6, 15}}},
    {1.50, {{1, 0, 2, 5}, {2, 0, 7, 10}, {3, 0, 6, 15}}},
    {1.75, {{1, 0, 3, 5}, {2, 0, 7.5, 10}, {3, 0, 6, 15}}},
    {2.00, {{1, 0, 4, 5}, {2, 0, 6, 10}, {3, 0, 9, 15}}},
};

} // namespace

std::vector<Task> reference_taskset(double density) {
    for (const auto& row : kReferenceTasksets) {
        if (std::abs(row.density - density) <= 1e-9) {
            return {row.tasks[0], row.tasks[1], row.tasks[2]};
        }
    }
    throw UnknownPresetError("no reference taskset with density " + std::to_string(density));
}

const std::vector<double>& reference_densities() {
    static const std::vector<double> densities = {0.50, 0.75, 1.00, 1.25, 1.50, 1.75, 2.00};
    return densities;
}

std::vector<Task> taskset_preset(const std::string& name) {
    const std::string prefix = "paper:D=";
    if (name.rfind(prefix, 0) != 0) {
        throw UnknownPresetError("unknown taskset preset '" + name +
                                 "' (expected paper:D=<density>)");
    }
    const std::string value = name.substr(prefix.size());
    char* end = nullptr;
    const double density = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw UnknownPresetError("cannot parse density in taskset preset '" + name + "'");
    }
    return reference_taskset(density);
}

} // namespace lpdvfs
