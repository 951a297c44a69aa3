#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "weldtherm/config.hpp"
#include "weldtherm/types.hpp"

namespace weldtherm {

struct RunArtifacts {
    std::vector<std::filesystem::path> files;
    double N = 0.0;
    DerivedScales scales{};
};

/// Resolve the coupling constant per ProcessParams.n_mode (the BVP mode
/// solves the inner layer problem).
double resolve_coupling_constant(const ProcessParams& p);

/// Execute the configured model and write the requested CSV artifacts.
/// out_override, when given, replaces cfg.out_dir.
RunArtifacts run(const RunConfig& cfg,
                 const std::optional<std::filesystem::path>& out_override = std::nullopt);

struct VerifyRow {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;   ///< target value or bound
    double tolerance = 0.0;  ///< admissible |measured - expected| or upper bound on measured
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_pass() const;
};

/// Run the oracle suite for the configured model: analytic limits,
/// residual identities and discretization checks. Failures are report
/// rows, not errors.
VerifyReport verify(const RunConfig& cfg);

void print_report(const VerifyReport& rep, std::ostream& os);

}  // namespace weldtherm
