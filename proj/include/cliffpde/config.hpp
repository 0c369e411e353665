#ifndef CLIFFPDE_CONFIG_HPP
#define CLIFFPDE_CONFIG_HPP

#include <cstdint>
#include <string>

namespace cliffpde {

struct ExperimentConfig {
    std::string command = "all";
    int d = 4;
    int N = 0;  // 0 = default for the dimension (16 for d=4, 24 for d=3)
    std::uint64_t seed = 42;
    double amplitude = 1.0;
    int bandwidth = 0;  // 0 = default N/3 (N/4 where cubic products appear)
    std::string out_path = "report.json";

    int resolved_n() const { return N != 0 ? N : (d == 4 ? 16 : 24); }
    int quadratic_bandwidth() const { return bandwidth != 0 ? bandwidth : resolved_n() / 3; }
    int cubic_bandwidth() const { return bandwidth != 0 ? bandwidth : resolved_n() / 4; }
};

/// Parses line-oriented `key = value` text.  '#' starts a comment.  Unknown
/// keys produce a warning on stderr; malformed lines throw with the line
/// number.  Known keys: grid.N, grid.d, seed, amplitude, bandwidth, out.
ExperimentConfig load_config(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& line, int lineno);

}  // namespace cliffpde

#endif
