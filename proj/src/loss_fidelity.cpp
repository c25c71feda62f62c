#include "qnd/loss_fidelity.hpp"

#include <cmath>
#include <stdexcept>

#include "qnd/errors.hpp"

namespace qnd {

double loss_zeta(const CavityParams& p) {
    return 4.0 * p.gamma * p.g * p.g * p.n_atoms / (p.kappa * p.delta * p.delta);
}

double alpha_series(const CavityParams& p) {
    const double u = p.gamma * p.g * p.g * p.n_atoms / (p.kappa * p.delta * p.delta);
    const double w = p.g * p.g * p.n_atoms / (p.kappa * p.delta);
    return 1.0 - 4.0 * u + (2.0 * u) * (2.0 * u) + (2.0 * w) * (2.0 * w);
}

std::complex<double> reflection_exact(const CavityParams& p) {
    const std::complex<double> pole =
        p.g * p.g * p.n_atoms / std::complex<double>(p.delta, -p.gamma);
    return 2.0 * p.kappa / (p.kappa - std::complex<double>(0.0, 1.0) * pole) - 1.0;
}

double loss_exact(const CavityParams& p) { return 1.0 - std::norm(reflection_exact(p)); }

double detuning_factor(double kappa, double delta) {
    const double h = 0.5 * kappa;
    return h * h / (h * h + delta * delta);
}

double purcell_factor(const CavityParams& p) {
    if (!p.geometry)
        throw ConfigError("purcell_factor: geometry block required",
                          {"geometry block missing (wavelength, index, area, length, finesse)"});
    const auto& ge = *p.geometry;
    const double lam = ge.wavelength / ge.refractive_index;
    return (3.0 * ge.quality_factor / (4.0 * M_PI * M_PI)) * (lam * lam * lam / ge.mode_volume) *
           detuning_factor(p.kappa, p.delta);
}

double combined_cavity_loss(double eta_r, double kappa, double delta, bool exact_coefficient) {
    if (!(eta_r > 0.0 && eta_r <= 1.0))
        throw std::domain_error("combined_cavity_loss: eta_r must lie in (0, 1]");
    const double coeff = exact_coefficient ? 6.0 / M_PI : 2.0;
    return (coeff / eta_r) * detuning_factor(kappa, delta);
}

MultipassLoss multipass_loss(int m, double eta_r, double kappa, double delta) {
    if (m < 1) throw std::domain_error("multipass_loss: m must be >= 1");
    MultipassLoss r;
    r.per_pass_chi_fraction = 1.0 / static_cast<double>(m);
    r.loss = combined_cavity_loss(eta_r, kappa, delta, /*exact_coefficient=*/true) /
             static_cast<double>(m);
    return r;
}

LossReport make_loss_report(const CavityParams& p, int multipass_m, bool exact_coefficient) {
    LossReport r;
    r.zeta = loss_zeta(p);
    r.alpha_series = alpha_series(p);
    r.reflection_exact = reflection_exact(p);
    r.loss_exact = loss_exact(p);
    if (p.geometry) r.purcell = purcell_factor(p);
    r.combined_loss = combined_cavity_loss(p.eta_r, p.kappa, p.delta, exact_coefficient);
    r.multipass_m = multipass_m;
    r.multipass_loss = multipass_loss(multipass_m, p.eta_r, p.kappa, p.delta).loss;
    return r;
}

FidelityReport timebin_fidelity(double n_probe, double chi, double gamma_storage,
                                double bin_separation, double window_sigmas) {
    if (!(chi > 0.0)) throw std::domain_error("timebin_fidelity: chi must be > 0");
    const double gt = gamma_storage * bin_separation;
    if (gt < 0.0) throw std::domain_error("timebin_fidelity: gamma*T must be >= 0");

    FidelityReport r;
    r.gamma_storage = gamma_storage;
    r.bin_separation = bin_separation;
    if (gt == 0.0) {
        r.fidelity = 1.0;
        r.delta_theta_max = 0.0;
        return r;
    }

    const FockVector state = coherent_amplitudes(n_probe, window_sigmas);
    const double decay = 1.0 - std::exp(-gt);
    double sum = 0.0;
    double dth_max = 0.0;
    for (int n = state.n_min; n <= state.n_top(); ++n) {
        const double p = std::norm(state.amplitudes[static_cast<std::size_t>(n - state.n_min)]);
        const double resid = 2.0 * (n_probe - static_cast<double>(n)) * chi;
        const double dtheta =
            (2.0 * chi / (1.0 + resid * resid)) * static_cast<double>(n) * decay;
        dth_max = std::fmax(dth_max, dtheta);
        const double half = std::cos(0.5 * dtheta); // |(1 + e^{i dtheta})/2| = |cos(dtheta/2)|
        sum += p * half * half;
    }
    r.fidelity = std::sqrt(sum);
    // report the linearized peak 2 sqrt(Np) gamma T in the small-decay regime
    r.delta_theta_max = gt < 0.01 ? 2.0 * std::sqrt(n_probe) * gt : dth_max;
    return r;
}

} // namespace qnd
