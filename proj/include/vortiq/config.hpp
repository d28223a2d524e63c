// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortiq {

/// Experiment description, parsed from a flat key = value text file.
/// Keys carry explicit units where a quantity is dimensional.
struct RunConfig {
    int n_grid = 32;
    double nu_m2_per_s = 0.05;
    std::string init = "random";  // taylor_green | taylor_green_2d | abc | random
    double abc_a = 1.0, abc_b = 1.0, abc_c = 1.0;
    double spectrum_slope = 4.0;
    double k_peak = 3.0;
    double amplitude_m_per_s = 1.0;
    std::uint64_t seed = 1;
    double t_end_s = 1.0;
    double dt_s = 5e-3;   // used when cfl <= 0
    double cfl = 0.0;
    int record_stride = 1;
    int checkpoint_stride = 0;  // 0: only first/last
    std::vector<double> q_list{2.0, 3.0, 4.0};
    double lambda_threshold = 0.0;  // <= 0: use 0.5 max|omega(0)|
    std::vector<double> beta_grid{0.5};
    double rho_fixed = 0.0;  // <= 0: fit rho from sampled angles
    std::size_t n_pairs = 100000;
    double omega_ceiling = 1e6;
    bool with_budget = true;
};

namespace detail_cfg {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string format_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s;
}

}  // namespace detail_cfg

inline void validate(const RunConfig& cfg) {
    if (cfg.n_grid < 8 || cfg.n_grid % 2 != 0)
        throw std::invalid_argument("config: n_grid must be even and >= 8");
    if (!(cfg.nu_m2_per_s > 0.0))
        throw std::invalid_argument("config: nu_m2_per_s must be positive");
    if (cfg.t_end_s < 0.0)
        throw std::invalid_argument("config: t_end_s must be nonnegative");
    if (cfg.cfl <= 0.0 && !(cfg.dt_s > 0.0))
        throw std::invalid_argument("config: need dt_s > 0 or cfl in (0,1]");
    if (cfg.cfl > 1.0)
        throw std::invalid_argument("config: cfl must lie in (0,1]");
    if (cfg.record_stride < 1)
        throw std::invalid_argument("config: record_stride must be >= 1");
    for (double q : cfg.q_list)
        if (!(q > 1.0))
            throw std::invalid_argument("config: every q must exceed 1");
    if (cfg.init != "taylor_green" && cfg.init != "taylor_green_2d" &&
        cfg.init != "abc" && cfg.init != "random")
        throw std::invalid_argument("config: unknown init '" + cfg.init + "'");
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string stripped = detail_cfg::trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' on line " +
                                        std::to_string(lineno));
        const std::string key = detail_cfg::trim(stripped.substr(0, eq));
        const std::string val = detail_cfg::trim(stripped.substr(eq + 1));

        if (key == "n_grid") cfg.n_grid = std::stoi(val);
        else if (key == "nu_m2_per_s") cfg.nu_m2_per_s = std::stod(val);
        else if (key == "init") cfg.init = val;
        else if (key == "abc_a") cfg.abc_a = std::stod(val);
        else if (key == "abc_b") cfg.abc_b = std::stod(val);
        else if (key == "abc_c") cfg.abc_c = std::stod(val);
        else if (key == "spectrum_slope") cfg.spectrum_slope = std::stod(val);
        else if (key == "k_peak") cfg.k_peak = std::stod(val);
        else if (key == "amplitude_m_per_s") cfg.amplitude_m_per_s = std::stod(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "t_end_s") cfg.t_end_s = std::stod(val);
        else if (key == "dt_s") cfg.dt_s = std::stod(val);
        else if (key == "cfl") cfg.cfl = std::stod(val);
        else if (key == "record_stride") cfg.record_stride = std::stoi(val);
        else if (key == "checkpoint_stride") cfg.checkpoint_stride = std::stoi(val);
        else if (key == "q_list") cfg.q_list = detail_cfg::parse_list(val);
        else if (key == "lambda_threshold") cfg.lambda_threshold = std::stod(val);
        else if (key == "beta_grid") cfg.beta_grid = detail_cfg::parse_list(val);
        else if (key == "rho_fixed") cfg.rho_fixed = std::stod(val);
        else if (key == "n_pairs") cfg.n_pairs = std::stoull(val);
        else if (key == "omega_ceiling") cfg.omega_ceiling = std::stod(val);
        else if (key == "with_budget") cfg.with_budget = (val == "true" || val == "1");
        else
            throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                        std::to_string(lineno));
    }
    validate(cfg);
    return cfg;
}

/// Canonical serialization; reparsing it reproduces the config.
inline std::string to_text(const RunConfig& c) {
    using detail_cfg::format_double;
    std::ostringstream os;
    os << "n_grid = " << c.n_grid << "\n"
       << "nu_m2_per_s = " << format_double(c.nu_m2_per_s) << "\n"
       << "init = " << c.init << "\n"
       << "abc_a = " << format_double(c.abc_a) << "\n"
       << "abc_b = " << format_double(c.abc_b) << "\n"
       << "abc_c = " << format_double(c.abc_c) << "\n"
       << "spectrum_slope = " << format_double(c.spectrum_slope) << "\n"
       << "k_peak = " << format_double(c.k_peak) << "\n"
       << "amplitude_m_per_s = " << format_double(c.amplitude_m_per_s) << "\n"
       << "seed = " << c.seed << "\n"
       << "t_end_s = " << format_double(c.t_end_s) << "\n"
       << "dt_s = " << format_double(c.dt_s) << "\n"
       << "cfl = " << format_double(c.cfl) << "\n"
       << "record_stride = " << c.record_stride << "\n"
       << "checkpoint_stride = " << c.checkpoint_stride << "\n"
       << "q_list = " << detail_cfg::format_list(c.q_list) << "\n"
       << "lambda_threshold = " << format_double(c.lambda_threshold) << "\n"
       << "beta_grid = " << detail_cfg::format_list(c.beta_grid) << "\n"
       << "rho_fixed = " << format_double(c.rho_fixed) << "\n"
       << "n_pairs = " << c.n_pairs << "\n"
       << "omega_ceiling = " << format_double(c.omega_ceiling) << "\n"
       << "with_budget = " << (c.with_budget ? "true" : "false") << "\n";
    return os.str();
}

/// FNV-1a 64-bit hash of the canonical config text, hex-encoded.
inline std::string config_hash(const RunConfig& c) {
    const std::string text = to_text(c);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace vortiq
