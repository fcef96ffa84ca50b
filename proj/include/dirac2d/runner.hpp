#pragma once

#include <map>
#include <string>

#include "dirac2d/grid.hpp"
#include "dirac2d/report.hpp"

namespace dirac2d {

// configuration / usage problems map to exit code 2
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    GridSpec grid;
    OutFormat format = OutFormat::both;
    std::string out_dir = "out";
    std::map<std::string, double> params;       // numeric experiment knobs
    std::map<std::string, std::string> sparams; // string knobs

    double num(const std::string& key) const { return params.at(key); }
    std::string str(const std::string& key) const { return sparams.at(key); }
};

// Parse the line-oriented "key = value" document ('#' comments,
// optional [section] headers that prefix keys). Unknown keys, malformed
// lines, and out-of-range values are errors.
RunConfig parse_config(const std::string& text);

// Execute the configured experiment, writing reports and a manifest
// under cfg.out_dir. Exit status: 0 all checks passed, 1 a check
// failed, 3 numerical error.
int run(const RunConfig& cfg);

extern const char* kVersion;

} // namespace dirac2d
