#ifndef CLIFFPDE_REPORT_HPP
#define CLIFFPDE_REPORT_HPP

#include <string>
#include <vector>

#include "cliffpde/config.hpp"

namespace cliffpde {

/// One verification check: passes iff value <= threshold.
struct CheckResult {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

struct ExperimentReport {
    int schema_version = 1;
    std::string command;
    ExperimentConfig config;
    std::vector<CheckResult> checks;

    void add(const std::string& name, double value, double threshold);
    bool all_pass() const;
    /// Deterministic JSON (no timing data inside the report bytes).
    std::string to_json() const;
    void write(const std::string& path) const;
};

}  // namespace cliffpde

#endif
