#include "lpdvfs/json_io.hpp"

#include "lpdvfs/errors.hpp"
#include "lpdvfs/presets.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lpdvfs {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

double number_field(const json& obj, const char* field, const std::string& origin) {
    if (!obj.contains(field) || !obj[field].is_number()) {
        throw ParseError(origin + ": missing or non-numeric field '" + field + "'");
    }
    return obj[field].get<double>();
}

bool looks_like_path(const std::string& value) {
    return value.find('/') != std::string::npos || value.find(".json") != std::string::npos;
}

} // namespace

ProcessorModel parse_processor_json(const std::string& text, const std::string& origin) {
    const json doc = parse(text, origin);
    if (!doc.is_object()) throw ParseError(origin + ": expected a JSON object");
    ProcessorModel model;
    model.name = doc.value("name", "unnamed");
    model.f_max_mhz = number_field(doc, "f_max_mhz", origin);
    model.idle_mw = number_field(doc, "idle_mw", origin);
    if (!doc.contains("levels") || !doc["levels"].is_array()) {
        throw ParseError(origin + ": missing 'levels' array");
    }
    for (const auto& entry : doc["levels"]) {
        SpeedLevel level;
        level.speed = number_field(entry, "speed", origin);
        level.active_mw = number_field(entry, "active_mw", origin);
        model.levels.push_back(level);
    }
    validate(model);
    return model;
}

std::vector<Task> parse_taskset_json(const std::string& text, const std::string& origin) {
    const json doc = parse(text, origin);
    if (!doc.is_array()) throw ParseError(origin + ": expected a JSON array of tasks");
    std::vector<Task> tasks;
    std::size_t index = 0;
    for (const auto& entry : doc) {
        std::ostringstream where;
        where << origin << " task[" << index << "]";
        Task task;
        if (!entry.contains("id") || !entry["id"].is_number_integer()) {
            throw ParseError(where.str() + ": missing integer field 'id'");
        }
        task.id = entry["id"].get<int>();
        task.arrival = number_field(entry, "arrival", where.str());
        task.est_min_exec = number_field(entry, "exec", where.str());
        task.rel_deadline = number_field(entry, "deadline", where.str());
        try {
            validate(task);
        } catch (const ValidationError& e) {
            throw ParseError(where.str() + ": " + e.what());
        }
        tasks.push_back(task);
        ++index;
    }
    return tasks;
}

ProcessorModel load_processor(const std::string& preset_or_path) {
    if (!looks_like_path(preset_or_path)) {
        return processor_preset(preset_or_path);
    }
    return parse_processor_json(read_file(preset_or_path), preset_or_path);
}

std::vector<Task> load_taskset(const std::string& preset_or_path) {
    if (!looks_like_path(preset_or_path) || preset_or_path.rfind("paper:", 0) == 0) {
        return taskset_preset(preset_or_path);
    }
    return parse_taskset_json(read_file(preset_or_path), preset_or_path);
}

std::map<int, double> load_gamma(const std::string& value_or_path,
                                 const std::vector<Task>& tasks) {
    std::map<int, double> gamma;
    char* end = nullptr;
    const double single = std::strtod(value_or_path.c_str(), &end);
    if (end != value_or_path.c_str() && *end == '\0') {
        for (const auto& task : tasks) gamma[task.id] = single;
        return gamma;
    }
    const json doc = parse(read_file(value_or_path), value_or_path);
    if (!doc.is_object()) {
        throw ParseError(value_or_path + ": expected a JSON object mapping task ids to factors");
    }
    for (const auto& [key, value] : doc.items()) {
        char* key_end = nullptr;
        const long id = std::strtol(key.c_str(), &key_end, 10);
        if (key_end == key.c_str() || *key_end != '\0') {
            throw ParseError(value_or_path + ": non-integer task id '" + key + "'");
        }
        if (!value.is_number()) {
            throw ParseError(value_or_path + ": non-numeric factor for task " + key);
        }
        gamma[static_cast<int>(id)] = value.get<double>();
    }
    return gamma;
}

} // namespace lpdvfs
