#include "cliffpde/config.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace cliffpde {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& raw, int lineno) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("config parse error at line " + std::to_string(lineno) +
                                 ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
        throw std::runtime_error("config parse error at line " + std::to_string(lineno) +
                                 ": empty key or value");
    try {
        if (key == "grid.N")
            cfg.N = std::stoi(value);
        else if (key == "grid.d")
            cfg.d = std::stoi(value);
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "amplitude")
            cfg.amplitude = std::stod(value);
        else if (key == "bandwidth")
            cfg.bandwidth = std::stoi(value);
        else if (key == "out")
            cfg.out_path = value;
        else
            std::cerr << "warning: unknown config key '" << key << "' at line " << lineno << "\n";
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("config parse error at line " + std::to_string(lineno) +
                                 ": bad value for " + key);
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) apply_config_line(cfg, line, ++lineno);
    return cfg;
}

}  // namespace cliffpde
