#include "cliffpde/report.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace cliffpde {

void ExperimentReport::add(const std::string& name, double value, double threshold) {
    checks.push_back({name, value, threshold, value <= threshold});
}

bool ExperimentReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["config"] = {{"d", config.d},
                   {"N", config.resolved_n()},
                   {"seed", config.seed},
                   {"amplitude", config.amplitude},
                   {"bandwidth_quadratic", config.quadratic_bandwidth()},
                   {"bandwidth_cubic", config.cubic_bandwidth()}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"pass", c.pass}});
    j["all_pass"] = all_pass();
    return j.dump(2) + "\n";
}

void ExperimentReport::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report to " + path);
    out << to_json();
}

}  // namespace cliffpde
