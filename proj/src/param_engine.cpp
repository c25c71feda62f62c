#include "qnd/param_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "qnd/errors.hpp"

namespace qnd {

double f_factor(const CavityParams& p) {
    return p.chi() * std::sqrt(p.eta_r * p.n_probe);
}

double f_factor_geometric(const CavityParams& p) {
    if (!p.geometry)
        throw ConfigError("f_factor_geometric: geometry block required",
                          {"geometry block missing (wavelength, index, area, finesse)"});
    const auto& ge = *p.geometry;
    return (1.0 / (4.0 * M_PI)) *
           (ge.wavelength * ge.wavelength / (ge.refractive_index * ge.refractive_index * ge.mode_area)) *
           (ge.finesse * p.gamma_r / p.delta) * std::sqrt(p.eta_r * p.n_probe);
}

FeasibilityReport feasibility_report(const CavityParams& p, const FeasibilityOptions& opt) {
    FeasibilityReport r;
    r.f = f_factor(p);
    if (p.geometry) r.f_geometric = f_factor_geometric(p);
    r.loss = combined_cavity_loss(p.eta_r, p.kappa, p.delta, opt.exact_coefficient);
    r.epsilon = opt.epsilon;
    r.n_probe_eval = std::fmin(p.n_probe, opt.n_probe_eval_cap);

    const double chi = p.chi();
    if (chi > 0.0 && r.n_probe_eval > 0.0) {
        const DiscriminationReport d =
            discriminate(r.n_probe_eval, chi, opt.epsilon, opt.quad_scale, opt.window_sigmas);
        r.success_state_level = d.success;
    } else {
        // no cross phase: the signal state equals the reference state and the
        // decision rule fires exactly at the false-positive budget
        r.success_state_level = opt.epsilon;
        r.warnings.push_back("chi = 0: no discrimination power, success equals the false-positive rate");
    }
    r.success_total = r.success_state_level * (1.0 - r.loss);

    if (r.f < 0.7) r.warnings.push_back("f below 0.7: probe states stay too close to discriminate");
    if (r.loss > 0.2) r.warnings.push_back("signal loss above 20%");
    for (auto& w : p.advisories()) r.warnings.push_back(w);
    if (r.n_probe_eval < p.n_probe)
        r.warnings.push_back("success integral evaluated at the capped photon number " +
                             std::to_string(r.n_probe_eval) +
                             "; overlap only improves with n_probe, so this is conservative");
    return r;
}

SweepEngine::SweepEngine(CavityParams params, EngineSettings settings)
    : params_(std::move(params)), settings_(std::move(settings)) {}

double SweepEngine::chi_for(const CavityParams& p) const {
    if (settings_.chi_from_params) return p.chi();
    return settings_.chi_rule.at(p.n_probe);
}

std::vector<SweepRow> SweepEngine::run(const SweepSpec& spec) const {
    // reject meaningless (axis, quantity) pairs up front
    const auto bad = [&](const char* why) {
        throw ConfigError("sweep: unsupported axis/quantity combination", {why});
    };
    switch (spec.quantity) {
        case SweepQuantity::loss:
            if (spec.axis != SweepAxis::delta_over_kappa && spec.axis != SweepAxis::multipass_m)
                bad("loss varies only along delta_over_kappa or multipass_m");
            break;
        case SweepQuantity::success:
            if (spec.axis == SweepAxis::multipass_m) bad("success does not depend on multipass_m");
            break;
        case SweepQuantity::overlap_sq:
        case SweepQuantity::fidelity:
        case SweepQuantity::f:
            if (spec.axis == SweepAxis::epsilon || spec.axis == SweepAxis::multipass_m)
                bad("quantity does not depend on the chosen axis");
            break;
    }

    std::vector<SweepRow> rows(spec.values.size());
    const long count = static_cast<long>(spec.values.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const double v = spec.values[static_cast<std::size_t>(i)];
        rows[static_cast<std::size_t>(i)] = SweepRow{v, evaluate(spec, v)};
    }
    return rows;
}

double SweepEngine::evaluate(const SweepSpec& spec, double v) const {
    CavityParams p = params_;
    double chi_override = -1.0;
    double epsilon = settings_.epsilon;
    int m = settings_.multipass_m;

    switch (spec.axis) {
        case SweepAxis::n_probe: p.n_probe = v; break;
        case SweepAxis::chi: chi_override = v; break;
        case SweepAxis::delta_over_kappa: p.delta = v * p.kappa; break;
        case SweepAxis::epsilon: epsilon = v; break;
        case SweepAxis::multipass_m: m = static_cast<int>(v); break;
    }

    const double chi = chi_override > 0.0
                           ? chi_override
                           : (spec.axis == SweepAxis::delta_over_kappa ? p.chi() : chi_for(p));

    switch (spec.quantity) {
        case SweepQuantity::overlap_sq:
            return overlap_probability(p.n_probe, chi, settings_.window_sigmas);
        case SweepQuantity::success:
            return discriminate(p.n_probe, chi, epsilon, settings_.quad_scale,
                                settings_.window_sigmas)
                .success;
        case SweepQuantity::loss:
            return spec.axis == SweepAxis::multipass_m
                       ? multipass_loss(m, p.eta_r, p.kappa, p.delta).loss
                       : combined_cavity_loss(p.eta_r, p.kappa, p.delta,
                                              settings_.exact_coefficient);
        case SweepQuantity::fidelity:
            return timebin_fidelity(p.n_probe, chi, settings_.gamma_storage,
                                    settings_.bin_separation, settings_.window_sigmas)
                .fidelity;
        case SweepQuantity::f: {
            CavityParams q = p;
            if (chi_override > 0.0) {
                // express the overridden chi through g at fixed kappa, delta
                q.g = std::sqrt(chi_override * q.kappa * q.delta);
            }
            return f_factor(q);
        }
    }
    throw std::logic_error("sweep: unreachable quantity");
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_probe: return "n_probe";
        case SweepAxis::chi: return "chi";
        case SweepAxis::delta_over_kappa: return "delta_over_kappa";
        case SweepAxis::epsilon: return "epsilon";
        case SweepAxis::multipass_m: return "multipass_m";
    }
    return "?";
}

const char* to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::overlap_sq: return "overlap_sq";
        case SweepQuantity::success: return "success";
        case SweepQuantity::loss: return "loss";
        case SweepQuantity::fidelity: return "fidelity";
        case SweepQuantity::f: return "f";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "n_probe") return SweepAxis::n_probe;
    if (s == "chi") return SweepAxis::chi;
    if (s == "delta_over_kappa") return SweepAxis::delta_over_kappa;
    if (s == "epsilon") return SweepAxis::epsilon;
    if (s == "multipass_m") return SweepAxis::multipass_m;
    throw ConfigError("unknown sweep axis '" + s + "'",
                      {"sweep axis must be one of n_probe, chi, delta_over_kappa, epsilon, multipass_m"});
}

SweepQuantity parse_sweep_quantity(const std::string& s) {
    if (s == "overlap_sq") return SweepQuantity::overlap_sq;
    if (s == "success") return SweepQuantity::success;
    if (s == "loss") return SweepQuantity::loss;
    if (s == "fidelity") return SweepQuantity::fidelity;
    if (s == "f") return SweepQuantity::f;
    throw ConfigError("unknown sweep quantity '" + s + "'",
                      {"sweep quantity must be one of overlap_sq, success, loss, fidelity, f"});
}

} // namespace qnd
