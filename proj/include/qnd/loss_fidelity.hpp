#pragma once

#include <complex>
#include <optional>

#include "qnd/phase_model.hpp"

namespace qnd {

/// Dominant off-resonant absorption loss zeta = 4 gamma g^2 N / (kappa Delta^2).
double loss_zeta(const CavityParams& p);

/// Intensity transmission expanded in inverse powers of the cavity rate:
/// alpha = 1 - 4 gamma g^2 N/(kappa Delta^2) + (2 gamma g^2 N/(kappa Delta^2))^2
///           + (2 g^2 N/(kappa Delta))^2.
double alpha_series(const CavityParams& p);

/// Exact zero-frequency output/input field ratio
/// 2 kappa / (kappa - i g^2 N / (Delta - i gamma)) - 1; unit modulus at gamma = 0.
std::complex<double> reflection_exact(const CavityParams& p);

/// 1 - |reflection_exact|^2.
double loss_exact(const CavityParams& p);

/// (kappa/2)^2 / ((kappa/2)^2 + Delta^2).
double detuning_factor(double kappa, double delta);

/// Purcell enhancement (3Q/4pi^2) ((lambda0/n)^3/V) * detuning factor.
/// Requires the geometry block.
double purcell_factor(const CavityParams& p);

/// Purcell-folded closed form of the signal loss:
/// (c/eta_r) (kappa/2)^2/((kappa/2)^2 + Delta^2) with c = 6/pi (exact) or the
/// rounded c = 2 (default; every working number downstream uses it).
double combined_cavity_loss(double eta_r, double kappa, double delta,
                            bool exact_coefficient = false);

struct MultipassLoss {
    /// Per-pass coupling fraction: m passes relax the per-pass phase
    /// requirement to chi ~ 1/(m sqrt(eta_r N)), i.e. 1/m of the single pass.
    double per_pass_chi_fraction = 1.0;
    /// (6 / (m pi eta_r)) * detuning factor.
    double loss = 0.0;
};

/// m-pass loss; m = 1 reduces to combined_cavity_loss with the exact 6/pi
/// coefficient. m < 1 is a domain error.
MultipassLoss multipass_loss(int m, double eta_r, double kappa, double delta);

struct LossReport {
    double zeta = 0.0;
    double alpha_series = 0.0;
    std::complex<double> reflection_exact;
    double loss_exact = 0.0;
    std::optional<double> purcell; // present only with a geometry block
    double combined_loss = 0.0;
    int multipass_m = 1;
    double multipass_loss = 0.0;
};

LossReport make_loss_report(const CavityParams& p, int multipass_m = 1,
                            bool exact_coefficient = false);

struct FidelityReport {
    double delta_theta_max = 0.0; // rad
    double fidelity = 1.0;
    double gamma_storage = 0.0; // plain decay rate, 1/s
    double bin_separation = 0.0; // s
};

/// Time-bin qubit output fidelity under storage decay:
///   F = sqrt( sum_n |c_n|^2 |(1 + e^{i dtheta_n})/2|^2 ),
///   dtheta_n = [2 chi / (1 + (2 (Np - n) chi)^2)] * n * (1 - e^{-gamma T}).
/// The exact decay factor is used in dtheta_n; the reported delta_theta_max
/// switches to the small-gamma-T linearization 2 sqrt(Np) gamma T when
/// gamma T < 0.01. gamma_storage is a plain decay rate in 1/s.
FidelityReport timebin_fidelity(double n_probe, double chi, double gamma_storage,
                                double bin_separation, double window_sigmas = 10.0);

} // namespace qnd
