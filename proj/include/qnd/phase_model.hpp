#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qnd/fock.hpp"

namespace qnd {

/// Cavity geometry block. quality_factor and mode_volume are tied to the rest
/// by Q = F * 2L / (lambda0/n) and V = A * L.
struct Geometry {
    double wavelength = 0.0;       // lambda0, m
    double refractive_index = 1.0; // n
    double mode_area = 0.0;        // A, m^2
    double mode_length = 0.0;      // L, m
    double finesse = 0.0;          // F
    double quality_factor = 0.0;   // Q
    double mode_volume = 0.0;      // V, m^3
};

/// Physical parameter bundle feeding every formula. All rates are angular
/// (rad/s) except where an operation explicitly takes a plain decay rate.
struct CavityParams {
    double g = 0.0;       // single-photon coupling
    double kappa = 0.0;   // cavity field decay rate
    double delta = 0.0;   // signal-atom detuning
    double gamma = 0.0;   // homogeneous linewidth
    double gamma_r = 0.0; // radiative linewidth
    double n_atoms = 0.0; // ensemble size N
    double n_probe = 0.0; // mean stored probe photons Np
    double eta_r = 1.0;   // probe retrieval efficiency
    std::optional<Geometry> geometry;

    double chi() const { return g * g / (kappa * delta); }

    /// Every violated invariant (empty when valid).
    std::vector<std::string> validate() const;
    /// Non-fatal advisories (e.g. probe occupation above 10% of the ensemble).
    std::vector<std::string> advisories() const;
};

/// Phase picked up per signal photon when exactly n_ground atoms sit in the
/// ground state: 4 chi / (1 + (2 n_ground chi)^2).
double per_photon_phase(double chi, double n_ground);

/// Steady-state cavity/input field ratio sqrt(2 kappa) / (kappa (1 - 2i n_ground chi)).
std::complex<double> steady_cavity_ratio(double chi, double n_ground, double kappa);

/// Per-Fock-component cross phase phi_n and output reflection phase theta_n
/// over a photon-number window.
struct PhaseProfile {
    double chi = 0.0;
    double n_probe = 0.0; // reference photon number of the compensation detuning
    int n_min = 0;
    std::vector<double> phi;   // rad
    std::vector<double> theta; // rad
    bool compensated = true;

    int n_top() const { return n_min + static_cast<int>(phi.size()) - 1; }
    double phi_at(int n) const { return phi[static_cast<std::size_t>(n - n_min)]; }
    double theta_at(int n) const { return theta[static_cast<std::size_t>(n - n_min)]; }
};

/// phi_n = 4 chi / (1 + (2 (n - n_probe) chi)^2), the profile after the cavity
/// has been detuned to cancel the mean ground-state population shift;
/// theta_n = 2 atan(2 (n_probe - n) chi).
PhaseProfile compensated_phase_profile(double chi, double n_probe, int n_min, int n_max);

/// Diagnostic variant without the compensation detuning:
/// phi_n = 4 chi / (1 + (2 (n_atoms - n) chi)^2).
PhaseProfile uncompensated_phase_profile(double chi, double n_atoms, double n_probe,
                                         int n_min, int n_max);

/// amplitude_n -> amplitude_n e^{i n phi_n}; magnitudes are untouched.
/// Throws std::domain_error when the profile does not cover the state window.
FockVector apply_cross_phase(const FockVector& state, const PhaseProfile& profile);

/// Global reflection phase of the output signal, theta = 2 atan(2 (Np - n) chi).
double reflection_phase(double chi, double n_probe, double n);

/// (kappa + 2i (Np-n) g^2/Delta) / (kappa - 2i (Np-n) g^2/Delta); unit modulus.
std::complex<double> reflection_coefficient(double chi, double n_probe, double n);

} // namespace qnd
