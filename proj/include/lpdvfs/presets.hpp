#pragma once

#include "lpdvfs/core.hpp"

#include <string>
#include <vector>

namespace lpdvfs {

/// PowerPC 405LP: 33/100/266/333 MHz at 19/72/600/750 mW active, 12 mW idle.
ProcessorModel powerpc405lp_model();

/// XScale: 150/400/600/800/1000 MHz at 80/170/400/900/1600 mW active,
/// 40 mW idle.
ProcessorModel xscale_model();

/// Looks a processor preset up by name ("powerpc405lp" or "xscale").
ProcessorModel processor_preset(const std::string& name);

/// The built-in three-task reference tasksets, keyed by total density.
/// Valid densities: 0.50, 0.75, 1.00, 1.25, 1.50, 1.75, 2.00.
std::vector<Task> reference_taskset(double density);

/// Densities of all built-in reference tasksets, ascending.
const std::vector<double>& reference_densities();

/// Resolves a taskset preset of the form "paper:D=<density>".
std::vector<Task> taskset_preset(const std::string& name);

} // namespace lpdvfs
