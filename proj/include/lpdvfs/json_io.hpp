#pragma once

#include "lpdvfs/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace lpdvfs {

/// Loads a processor model from a preset name or a JSON file of the form
///   {"name": ..., "f_max_mhz": ..., "idle_mw": ...,
///    "levels": [{"speed": ..., "active_mw": ...}, ...]}
/// Throws UnknownPresetError, ParseError, or ValidationError.
ProcessorModel load_processor(const std::string& preset_or_path);

/// Loads a taskset from a preset name ("paper:D=<density>") or a JSON file
/// holding an array of {"id", "arrival", "exec", "deadline"} objects.
std::vector<Task> load_taskset(const std::string& preset_or_path);

/// Parses a gamma argument: either a single float applied to all tasks, or
/// a path to a JSON object mapping task ids to factors.
std::map<int, double> load_gamma(const std::string& value_or_path,
                                 const std::vector<Task>& tasks);

ProcessorModel parse_processor_json(const std::string& text, const std::string& origin);
std::vector<Task> parse_taskset_json(const std::string& text, const std::string& origin);

} // namespace lpdvfs
