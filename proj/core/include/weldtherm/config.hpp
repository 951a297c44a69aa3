#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "weldtherm/types.hpp"

namespace weldtherm {

/// Which CSV artifacts a run writes.
struct EmitSet {
    bool profiles = true;
    bool series = true;
    bool scales = true;
    bool inner = false;
    bool steady = true;
};

/// Shared solver settings; newton_* apply to the soft model only.
struct SolverSettings {
    int n = 0;
    double dt = 0.0;
    double t_end = 0.0;
    double picard_tol = 1e-10;
    int picard_max = 50;
    double newton_tol = 1e-10;
    int newton_max = 200;
    std::vector<double> snapshots;
};

struct RunConfig {
    MaterialProps material{};
    ProcessParams process{};
    SolverSettings solver{};
    std::filesystem::path out_dir;
    EmitSet emit{};
};

/// Parses the line-oriented `section.key = value` format ('#' comments,
/// decimal or scientific numerals, SI units). Unknown and duplicate keys
/// are hard errors; missing required keys are listed in one error.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Canonical `section.key = value` document for a RunConfig;
/// parse(serialize(parse(text))) == parse(text).
std::string serialize_config(const RunConfig& cfg);

}  // namespace weldtherm
