#include "weldtherm/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "weldtherm/csv.hpp"
#include "weldtherm/errors.hpp"

namespace weldtherm {

namespace {

constexpr std::array<const char*, 16> kRequiredKeys = {
    "material.rho", "material.c_p", "material.k",   "material.kappa_m",
    "material.T_m", "material.T_a", "process.P",    "process.L",
    "process.U_e",  "process.l",    "process.T_e",  "process.model",
    "solver.n",     "solver.dt",    "solver.t_end", "output.dir",
};

constexpr std::array<const char*, 23> kAllKeys = {
    "material.rho",      "material.c_p",      "material.k",
    "material.kappa_m",  "material.T_m",      "material.T_a",
    "process.P",         "process.L",         "process.U_e",
    "process.l",         "process.T_e",       "process.model",
    "process.N_mode",    "solver.n",          "solver.dt",
    "solver.t_end",      "solver.picard_tol", "solver.picard_max",
    "solver.newton_tol", "solver.newton_max", "solver.snapshots",
    "output.dir",        "output.emit",
};

struct Entry {
    std::string value;
    int line;
};

std::string_view trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

double to_double(const Entry& e, const std::string& key) {
    try {
        return parse_double(e.value);
    } catch (const ValidationError&) {
        throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": '" + e.value +
                              "' is not a number",
                          e.line);
    }
}

int to_int(const Entry& e, const std::string& key) {
    int v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": '" + e.value +
                              "' is not an integer",
                          e.line);
    }
    return v;
}

std::vector<double> to_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    std::string_view rest = e.value;
    if (trim(rest).empty()) return out;
    while (true) {
        const auto pos = rest.find(',');
        const auto tok = trim(rest.substr(0, pos));
        try {
            out.push_back(parse_double(tok));
        } catch (const ValidationError&) {
            throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": '" +
                                  std::string(tok) + "' is not a number",
                              e.line);
        }
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto sv = trim(line);
        if (sv.empty()) continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'section.key = value'",
                              lineno);
        }
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        if (std::find_if(kAllKeys.begin(), kAllKeys.end(),
                         [&](const char* k) { return key == k; }) == kAllKeys.end()) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'",
                              lineno);
        }
        const auto [it, inserted] = entries.emplace(key, Entry{value, lineno});
        if (!inserted) {
            throw ConfigError("duplicate key '" + key + "' (lines " +
                                  std::to_string(it->second.line) + " and " +
                                  std::to_string(lineno) + ")",
                              lineno);
        }
    }

    std::string missing;
    for (const char* key : kRequiredKeys) {
        if (!entries.contains(key)) {
            if (!missing.empty()) missing += ", ";
            missing += key;
        }
    }
    if (!missing.empty()) {
        throw ConfigError("missing required keys: " + missing);
    }

    RunConfig cfg;
    const auto num = [&](const char* key) { return to_double(entries.at(key), key); };
    cfg.material.rho = num("material.rho");
    cfg.material.cp = num("material.c_p");
    cfg.material.k = num("material.k");
    cfg.material.kappa_m = num("material.kappa_m");
    cfg.material.T_m = num("material.T_m");
    cfg.material.T_a = num("material.T_a");
    cfg.process.P = num("process.P");
    cfg.process.L = num("process.L");
    cfg.process.U_e = num("process.U_e");
    cfg.process.l = num("process.l");
    cfg.process.T_e = num("process.T_e");

    {
        const Entry& e = entries.at("process.model");
        if (e.value == "hard") {
            cfg.process.model = MaterialModel::hard;
        } else if (e.value == "soft") {
            cfg.process.model = MaterialModel::soft;
        } else {
            throw ConfigError("line " + std::to_string(e.line) +
                                  ": process.model must be 'hard' or 'soft'",
                              e.line);
        }
    }
    if (entries.contains("process.N_mode")) {
        const Entry& e = entries.at("process.N_mode");
        if (e.value == "bvp") {
            cfg.process.n_mode = CouplingMode::computed_from_bvp;
        } else if (e.value == "decoupling") {
            cfg.process.n_mode = CouplingMode::decoupling_constant;
        } else if (e.value == "asymptotic") {
            cfg.process.n_mode = CouplingMode::asymptotic_constant;
        } else {
            throw ConfigError("line " + std::to_string(e.line) +
                                  ": process.N_mode must be 'bvp', 'decoupling' or 'asymptotic'",
                              e.line);
        }
    } else {
        cfg.process.n_mode = cfg.process.model == MaterialModel::hard
                                 ? CouplingMode::computed_from_bvp
                                 : CouplingMode::decoupling_constant;
    }
    if (cfg.process.model == MaterialModel::hard &&
        cfg.process.n_mode != CouplingMode::computed_from_bvp) {
        throw ValidationError("the hard model takes N from the inner problem: use N_mode = bvp");
    }
    if (cfg.process.model == MaterialModel::soft &&
        cfg.process.n_mode == CouplingMode::computed_from_bvp) {
        throw ValidationError(
            "N_mode = bvp is the hard-material constant; the soft model needs 'decoupling' or "
            "'asymptotic'");
    }

    cfg.solver.n = to_int(entries.at("solver.n"), "solver.n");
    cfg.solver.dt = num("solver.dt");
    cfg.solver.t_end = num("solver.t_end");
    if (entries.contains("solver.picard_tol")) cfg.solver.picard_tol = num("solver.picard_tol");
    if (entries.contains("solver.picard_max")) {
        cfg.solver.picard_max = to_int(entries.at("solver.picard_max"), "solver.picard_max");
    }
    if (entries.contains("solver.newton_tol")) cfg.solver.newton_tol = num("solver.newton_tol");
    if (entries.contains("solver.newton_max")) {
        cfg.solver.newton_max = to_int(entries.at("solver.newton_max"), "solver.newton_max");
    }
    if (entries.contains("solver.snapshots")) {
        cfg.solver.snapshots = to_list(entries.at("solver.snapshots"), "solver.snapshots");
    }

    cfg.out_dir = entries.at("output.dir").value;
    if (cfg.out_dir.empty()) {
        throw ValidationError("output.dir must not be empty");
    }
    if (entries.contains("output.emit")) {
        const Entry& e = entries.at("output.emit");
        cfg.emit = EmitSet{false, false, false, false, false};
        std::string_view rest = e.value;
        while (!trim(rest).empty()) {
            const auto pos = rest.find(',');
            const auto tok = trim(rest.substr(0, pos));
            if (tok == "profiles") {
                cfg.emit.profiles = true;
            } else if (tok == "series") {
                cfg.emit.series = true;
            } else if (tok == "scales") {
                cfg.emit.scales = true;
            } else if (tok == "inner") {
                cfg.emit.inner = true;
            } else if (tok == "steady") {
                cfg.emit.steady = true;
            } else {
                throw ConfigError("line " + std::to_string(e.line) + ": unknown emit '" +
                                      std::string(tok) + "'",
                                  e.line);
            }
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
    }

    // invariant validation (names the violated constraint)
    cfg.material.validate();
    cfg.process.validate(cfg.material);
    make_grid(cfg.solver.n, cfg.process.l);
    if (!(cfg.solver.dt > 0.0)) throw ValidationError("solver.dt must be > 0");
    if (!(cfg.solver.t_end >= 0.0)) throw ValidationError("solver.t_end must be >= 0");
    if (!(cfg.solver.picard_tol > 0.0 && cfg.solver.picard_tol < 1.0)) {
        throw ValidationError("solver.picard_tol must lie in (0, 1)");
    }
    if (!(cfg.solver.newton_tol > 0.0 && cfg.solver.newton_tol < 1.0)) {
        throw ValidationError("solver.newton_tol must lie in (0, 1)");
    }
    if (cfg.solver.picard_max < 1) throw ValidationError("solver.picard_max must be >= 1");
    if (cfg.solver.newton_max < 1) throw ValidationError("solver.newton_max must be >= 1");
    for (const double s : cfg.solver.snapshots) {
        if (s < 0.0 || s > cfg.solver.t_end * (1.0 + 1e-12)) {
            throw ValidationError("solver.snapshots must lie within [0, t_end]");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    const auto put = [&](const char* key, const std::string& v) { out << key << " = " << v << "\n"; };
    const auto putd = [&](const char* key, double v) { put(key, format_double(v)); };
    putd("material.rho", cfg.material.rho);
    putd("material.c_p", cfg.material.cp);
    putd("material.k", cfg.material.k);
    putd("material.kappa_m", cfg.material.kappa_m);
    putd("material.T_m", cfg.material.T_m);
    putd("material.T_a", cfg.material.T_a);
    putd("process.P", cfg.process.P);
    putd("process.L", cfg.process.L);
    putd("process.U_e", cfg.process.U_e);
    putd("process.l", cfg.process.l);
    putd("process.T_e", cfg.process.T_e);
    put("process.model", cfg.process.model == MaterialModel::hard ? "hard" : "soft");
    switch (cfg.process.n_mode) {
        case CouplingMode::computed_from_bvp: put("process.N_mode", "bvp"); break;
        case CouplingMode::decoupling_constant: put("process.N_mode", "decoupling"); break;
        case CouplingMode::asymptotic_constant: put("process.N_mode", "asymptotic"); break;
    }
    put("solver.n", std::to_string(cfg.solver.n));
    putd("solver.dt", cfg.solver.dt);
    putd("solver.t_end", cfg.solver.t_end);
    putd("solver.picard_tol", cfg.solver.picard_tol);
    put("solver.picard_max", std::to_string(cfg.solver.picard_max));
    putd("solver.newton_tol", cfg.solver.newton_tol);
    put("solver.newton_max", std::to_string(cfg.solver.newton_max));
    if (!cfg.solver.snapshots.empty()) {
        std::string list;
        for (const double s : cfg.solver.snapshots) {
            if (!list.empty()) list += ",";
            list += format_double(s);
        }
        put("solver.snapshots", list);
    }
    put("output.dir", cfg.out_dir.string());
    std::string emit;
    const auto add = [&](bool on, const char* name) {
        if (on) {
            if (!emit.empty()) emit += ",";
            emit += name;
        }
    };
    add(cfg.emit.profiles, "profiles");
    add(cfg.emit.series, "series");
    add(cfg.emit.scales, "scales");
    add(cfg.emit.inner, "inner");
    add(cfg.emit.steady, "steady");
    put("output.emit", emit);
    return out.str();
}

}  // namespace weldtherm
