#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnd/param_engine.hpp"

namespace qnd {

enum class OutputFormat { csv, json, both };

/// Run configuration. Parsed from a key = value text file in which every rate
/// carries an explicit unit suffix; bare numbers in rate fields are rejected.
///
/// Unit handling:
///  - coherent/angular rates (g, kappa, delta, gamma, gamma_r): Hz-family
///    suffixes are multiplied by 2 pi on ingestion, rad/s-family taken as is.
///  - storage decay rates (gamma_s, gamma_h): Hz-family suffixes are plain
///    1/s rates (no 2 pi). This is the convention under which the published
///    time-bin fidelity numbers reproduce.
struct RunConfig {
    // physical parameters
    double g = 0.0;       // rad/s
    double kappa = 0.0;   // rad/s
    double delta = 0.0;   // rad/s
    double gamma = 0.0;   // rad/s
    double gamma_r = 0.0; // rad/s
    double gamma_s = 0.0; // 1/s
    double gamma_h = 0.0; // 1/s
    double n_atoms = 0.0;
    double n_probe = 0.0;
    double eta_r = 1.0;
    std::optional<Geometry> geometry;

    // numeric controls
    double window_sigmas = 10.0;
    int q_grid_points = 401;
    int quad_base_points = 4001;
    double quadrature_scale = 1.0; // 1 or sqrt(2)
    bool loss_exact_coefficient = false;
    double epsilon = 1e-3;
    double bin_separation = 1e-6; // s
    int multipass_m = 1;
    double n_probe_eval_cap = 2000;
    ChiRule chi_rule{};
    bool chi_from_params = false;

    std::optional<SweepSpec> sweep;

    std::string out_dir = "out";
    OutputFormat format = OutputFormat::both;
};

/// Defaults: the proposed operating point (g = 2pi*8 MHz, kappa = 2pi*30 MHz,
/// Delta = 2pi*100 MHz, eta_r = 0.5, Np = 6000) plus artifact-level numeric
/// controls.
RunConfig default_config();

/// Parse config text. Throws ConfigError listing every problem found.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Canonical serialization; parsing it back reproduces the exact same run
/// (floating-point values round-trip bit-exactly).
std::string serialize_config(const RunConfig& cfg);

/// Every violated invariant (empty when valid).
std::vector<std::string> validate(const RunConfig& cfg);

CavityParams to_cavity_params(const RunConfig& cfg);
EngineSettings to_engine_settings(const RunConfig& cfg);

/// "8 MHz" -> 2pi*8e6, "50.27 Mrad/s" -> 5.027e7. Throws ConfigError on a
/// missing/unknown suffix.
double parse_angular_rate(const std::string& text);
/// "0.34 kHz" -> 340 (plain 1/s).
double parse_decay_rate(const std::string& text);
/// "1 us" -> 1e-6.
double parse_time(const std::string& text);
/// "879 nm" -> 8.79e-7.
double parse_length(const std::string& text);
/// "0.8 um^2" -> 8e-13.
double parse_area(const std::string& text);

} // namespace qnd
