// weldtherm: transient and steady thermal simulation of linear friction
// welding workpieces, driven by a flat `section.key = value` config.
//
// Verbs: run, verify, scales, inner. Exit status: 0 = ran, 1 = config
// error, 2 = solver error.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "weldtherm/config.hpp"
#include "weldtherm/csv.hpp"
#include "weldtherm/errors.hpp"
#include "weldtherm/inner_layer.hpp"
#include "weldtherm/runner.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const weldtherm::RunConfig cfg = weldtherm::parse_config_file(config_path);
    std::optional<std::filesystem::path> override;
    if (!out_dir.empty()) override = out_dir;
    const weldtherm::RunArtifacts art = weldtherm::run(cfg, override);
    for (const auto& f : art.files) {
        std::cout << f.string() << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& config_path) {
    const weldtherm::RunConfig cfg = weldtherm::parse_config_file(config_path);
    const weldtherm::VerifyReport rep = weldtherm::verify(cfg);
    weldtherm::print_report(rep, std::cout);
    return 0;
}

int cmd_scales(const std::string& config_path) {
    const weldtherm::RunConfig cfg = weldtherm::parse_config_file(config_path);
    const double N = weldtherm::resolve_coupling_constant(cfg.process);
    const weldtherm::DerivedScales s = weldtherm::compute_scales(cfg.material, cfg.process, N);
    using weldtherm::format_double;
    std::cout << "V_E = " << format_double(s.V_E) << '\n'
              << "S = " << format_double(s.S) << '\n'
              << "h = " << format_double(s.h) << '\n'
              << "delta = " << format_double(s.delta) << '\n'
              << "G_E = " << format_double(s.G_E) << '\n'
              << "M = " << format_double(s.M) << '\n'
              << "V_inf = " << format_double(s.V_inf) << '\n'
              << "l_inf = " << format_double(s.l_inf) << '\n'
              << "t_inf = " << format_double(s.t_inf) << '\n'
              << "N = " << format_double(N) << '\n';
    return 0;
}

int cmd_inner(double eta_max, double tol) {
    const weldtherm::InnerSolution sol = weldtherm::solve_inner_bvp(tol, eta_max);
    using weldtherm::format_double;
    std::cout << "N = " << format_double(sol.N) << '\n'
              << "phi0 = " << format_double(sol.phi0) << '\n'
              << "c_inf = " << format_double(sol.c_inf) << '\n'
              << "eta_max = " << format_double(sol.eta_max) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal model of linear friction welding workpieces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "execute a configured simulation");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--out", out_dir, "override output.dir");

    std::string verify_config;
    auto* verify_cmd = app.add_subcommand("verify", "run the oracle checks for a config");
    verify_cmd->add_option("config", verify_config, "config file")->required();

    std::string scales_config;
    auto* scales_cmd = app.add_subcommand("scales", "print the derived scale block");
    scales_cmd->add_option("config", scales_config, "config file")->required();

    double eta_max = 40.0, tol = 1e-10;
    auto* inner_cmd = app.add_subcommand("inner", "solve the inner layer problem");
    inner_cmd->add_option("--eta-max", eta_max, "truncation point (>= 20)");
    inner_cmd->add_option("--tol", tol, "shooting tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(config_path, out_dir);
        if (*verify_cmd) return cmd_verify(verify_config);
        if (*scales_cmd) return cmd_scales(scales_config);
        if (*inner_cmd) return cmd_inner(eta_max, tol);
    } catch (const weldtherm::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 1;
    } catch (const weldtherm::ValidationError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 1;
    } catch (const weldtherm::SolverError& e) {
        std::cerr << "error: solver: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
