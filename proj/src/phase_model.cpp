#include "qnd/phase_model.hpp"

#include <cmath>
#include <stdexcept>

namespace qnd {

namespace {

void check_positive(std::vector<std::string>& out, double v, const char* name) {
    if (!(v > 0.0)) out.push_back(std::string(name) + " must be > 0");
}

bool rel_close(double a, double b, double tol) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= tol * std::fmax(scale, 1e-300);
}

} // namespace

std::vector<std::string> CavityParams::validate() const {
    std::vector<std::string> v;
    check_positive(v, g, "g");
    check_positive(v, kappa, "kappa");
    check_positive(v, delta, "delta");
    check_positive(v, gamma, "gamma");
    check_positive(v, gamma_r, "gamma_r");
    if (!(n_atoms >= 1.0)) v.push_back("n_atoms must be >= 1");
    if (!(n_probe >= 0.0)) v.push_back("n_probe must be >= 0");
    if (n_probe > 0.5 * n_atoms)
        v.push_back("n_probe must stay below half the ensemble size (linear storage regime)");
    if (!(eta_r > 0.0 && eta_r <= 1.0)) v.push_back("eta_r must lie in (0, 1]");
    if (geometry) {
        const auto& ge = *geometry;
        check_positive(v, ge.wavelength, "geometry.wavelength");
        check_positive(v, ge.refractive_index, "geometry.refractive_index");
        check_positive(v, ge.mode_area, "geometry.mode_area");
        check_positive(v, ge.mode_length, "geometry.mode_length");
        check_positive(v, ge.finesse, "geometry.finesse");
        check_positive(v, ge.quality_factor, "geometry.quality_factor");
        check_positive(v, ge.mode_volume, "geometry.mode_volume");
        if (ge.wavelength > 0 && ge.refractive_index > 0 && ge.mode_length > 0) {
            const double q_expected = ge.finesse * 2.0 * ge.mode_length /
                                      (ge.wavelength / ge.refractive_index);
            if (!rel_close(ge.quality_factor, q_expected, 1e-6))
                v.push_back("geometry: quality_factor inconsistent with finesse * 2L/(lambda0/n)");
        }
        if (ge.mode_area > 0 && ge.mode_length > 0 &&
            !rel_close(ge.mode_volume, ge.mode_area * ge.mode_length, 1e-6))
            v.push_back("geometry: mode_volume inconsistent with mode_area * mode_length");
    }
    return v;
}

std::vector<std::string> CavityParams::advisories() const {
    std::vector<std::string> v;
    if (n_probe > 0.1 * n_atoms && n_probe <= 0.5 * n_atoms)
        v.push_back("n_probe exceeds 10% of the ensemble; storage linearity is marginal");
    return v;
}

double per_photon_phase(double chi, double n_ground) {
    if (!(chi > 0.0)) throw std::domain_error("per_photon_phase: chi must be > 0");
    if (n_ground < 0.0) throw std::domain_error("per_photon_phase: n_ground must be >= 0");
    const double d = 2.0 * n_ground * chi;
    return 4.0 * chi / (1.0 + d * d);
}

std::complex<double> steady_cavity_ratio(double chi, double n_ground, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("steady_cavity_ratio: kappa must be > 0");
    return std::sqrt(2.0 * kappa) /
           (kappa * std::complex<double>(1.0, -2.0 * n_ground * chi));
}

namespace {

PhaseProfile make_profile(double chi, double detune_ref, double n_probe, int n_min, int n_max,
                          bool compensated) {
    if (n_min < 0 || n_max < n_min) throw std::domain_error("phase profile: invalid window");
    if (chi < 0.0) throw std::domain_error("phase profile: chi must be >= 0");
    PhaseProfile p;
    p.chi = chi;
    p.n_probe = n_probe;
    p.n_min = n_min;
    p.compensated = compensated;
    const std::size_t len = static_cast<std::size_t>(n_max - n_min) + 1;
    p.phi.resize(len);
    p.theta.resize(len);
    for (int n = n_min; n <= n_max; ++n) {
        const double d = 2.0 * (static_cast<double>(n) - detune_ref) * chi;
        p.phi[static_cast<std::size_t>(n - n_min)] = 4.0 * chi / (1.0 + d * d);
        p.theta[static_cast<std::size_t>(n - n_min)] =
            2.0 * std::atan(2.0 * (n_probe - static_cast<double>(n)) * chi);
    }
    return p;
}

} // namespace

PhaseProfile compensated_phase_profile(double chi, double n_probe, int n_min, int n_max) {
    return make_profile(chi, n_probe, n_probe, n_min, n_max, true);
}

PhaseProfile uncompensated_phase_profile(double chi, double n_atoms, double n_probe, int n_min,
                                         int n_max) {
    return make_profile(chi, n_atoms, n_probe, n_min, n_max, false);
}

FockVector apply_cross_phase(const FockVector& state, const PhaseProfile& profile) {
    if (profile.n_min > state.n_min || profile.n_top() < state.n_top())
        throw std::domain_error("apply_cross_phase: profile window does not cover the state");
    FockVector out = state;
    for (int n = state.n_min; n <= state.n_top(); ++n) {
        const std::size_t i = static_cast<std::size_t>(n - state.n_min);
        out.amplitudes[i] *= std::polar(1.0, static_cast<double>(n) * profile.phi_at(n));
    }
    return out;
}

double reflection_phase(double chi, double n_probe, double n) {
    return 2.0 * std::atan(2.0 * (n_probe - n) * chi);
}

std::complex<double> reflection_coefficient(double chi, double n_probe, double n) {
    // (kappa + 2i (Np-n) g^2/Delta) / (kappa - 2i (Np-n) g^2/Delta), kappa scaled out
    const std::complex<double> num(1.0, 2.0 * (n_probe - n) * chi);
    const std::complex<double> den(1.0, -2.0 * (n_probe - n) * chi);
    return num / den;
}

} // namespace qnd
