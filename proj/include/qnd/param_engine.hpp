#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnd/discrimination.hpp"
#include "qnd/loss_fidelity.hpp"
#include "qnd/phase_model.hpp"

namespace qnd {

/// Discrimination figure of merit f = (g^2 / kappa Delta) sqrt(eta_r Np);
/// f ~ 1 marks the workable regime.
double f_factor(const CavityParams& p);

/// Geometric form (1/4pi) (lambda0^2 / n^2 A) (F gamma_r / Delta) sqrt(eta_r Np).
/// Agrees with f_factor on consistent parameter sets; requires geometry.
double f_factor_geometric(const CavityParams& p);

struct FeasibilityOptions {
    double epsilon = 1e-3;          // false-positive budget for the success estimate
    double n_probe_eval_cap = 2000; // photon number cap for the quadrature integral
    double quad_scale = 1.0;
    bool exact_coefficient = false; // loss coefficient 6/pi instead of 2
    double window_sigmas = 10.0;
};

struct FeasibilityReport {
    double f = 0.0;
    std::optional<double> f_geometric;
    double loss = 0.0;
    double success_state_level = 0.0;
    double success_total = 0.0; // success_state_level * (1 - loss), exactly
    double n_probe_eval = 0.0;  // photon number the success integral actually used
    double epsilon = 0.0;
    std::vector<std::string> warnings;
};

FeasibilityReport feasibility_report(const CavityParams& p, const FeasibilityOptions& opt = {});

enum class SweepAxis { n_probe, chi, delta_over_kappa, epsilon, multipass_m };
enum class SweepQuantity { overlap_sq, success, loss, fidelity, f };

struct SweepSpec {
    SweepAxis axis = SweepAxis::n_probe;
    std::vector<double> values;
    SweepQuantity quantity = SweepQuantity::overlap_sq;
};

struct SweepRow {
    double axis_value = 0.0;
    double value = 0.0;
};

/// Numeric controls shared by sweeps and the CLI pipelines.
struct EngineSettings {
    double epsilon = 1e-3;
    double window_sigmas = 10.0;
    double quad_scale = 1.0;
    bool exact_coefficient = false;
    int multipass_m = 1;
    double gamma_storage = 340.0;  // 1/s
    double bin_separation = 1e-6;  // s
    ChiRule chi_rule{};            // chi used by state-level quantities
    bool chi_from_params = false;  // take chi = g^2/(kappa Delta) instead of the rule
    double n_probe_eval_cap = 2000;
};

/// Immutable sweep evaluator. Rows are computed independently (data-parallel)
/// and the output order matches the axis order.
class SweepEngine {
public:
    SweepEngine(CavityParams params, EngineSettings settings);

    /// Throws ConfigError for (axis, quantity) pairs with no defined meaning.
    std::vector<SweepRow> run(const SweepSpec& spec) const;

    const CavityParams& params() const { return params_; }
    const EngineSettings& settings() const { return settings_; }

private:
    double evaluate(const SweepSpec& spec, double axis_value) const;
    double chi_for(const CavityParams& p) const;

    CavityParams params_;
    EngineSettings settings_;
};

const char* to_string(SweepAxis axis);
const char* to_string(SweepQuantity q);
SweepAxis parse_sweep_axis(const std::string& s);
SweepQuantity parse_sweep_quantity(const std::string& s);

} // namespace qnd
