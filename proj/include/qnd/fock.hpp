#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qnd {

/// Pure state over a truncated photon-number window [n_min, n_min + len).
/// Amplitudes are unit-normalized; the probability mass that fell outside the
/// window before renormalization is kept in truncation_deficit.
struct FockVector {
    int n_min = 0;
    std::vector<std::complex<double>> amplitudes;
    double truncation_deficit = 0.0;

    int n_top() const { return n_min + static_cast<int>(amplitudes.size()) - 1; }
    double norm_sq() const;
};

/// Coherent state |alpha|^2 = n_probe truncated to
/// [max(0, floor(Np - k sqrt(Np))), ceil(Np + k sqrt(Np))], k = window_halfwidth_sigmas.
/// Amplitudes are computed in the log domain,
///   log c_n = -Np/2 + (n/2) ln Np - lgamma(n+1)/2,
/// so n! never overflows (needed from Np ~ 150 on; the working points go to 6000).
/// Throws TruncationError when the out-of-window mass exceeds deficit_tolerance,
/// std::domain_error for n_probe < 0 or window_halfwidth_sigmas < 1.
FockVector coherent_amplitudes(double n_probe, double window_halfwidth_sigmas = 10.0,
                               double phase = 0.0, double deficit_tolerance = 1e-10);

/// Single Fock basis state |n> (window of length 1).
FockVector fock_basis_state(int n);

/// <a|b> over the window intersection; disjoint windows give 0.
std::complex<double> inner_product(const FockVector& a, const FockVector& b);

/// Husimi Q samples on a rectangular phase-space grid (alpha = x + iy).
/// values is row-major over y (rows) then x (columns), in units of 1/pi.
struct QGrid {
    std::vector<double> x_axis;
    std::vector<double> y_axis;
    std::vector<double> values;

    double at(std::size_t iy, std::size_t ix) const { return values[iy * x_axis.size() + ix]; }
};

/// Homodyne probability density |<x|psi>|^2 sampled on x_axis.
struct QuadratureDensity {
    std::vector<double> x_axis;
    std::vector<double> density;
};

/// Default phase-space axis: `points` samples over [-R, R], R = sqrt(n_min+len) + 3.
std::vector<double> husimi_auto_axis(const FockVector& state, int points = 401);

/// Default quadrature axis over +-2 sqrt(2 n_top). The point count is raised
/// above base_points when needed to resolve the fastest density oscillation
/// (wavelength pi / sqrt(2 n_top)) with at least 8 samples, otherwise the
/// normalization integral of strongly phase-dispersed states degrades.
std::vector<double> quadrature_auto_axis(const FockVector& state, int base_points = 4001);

/// Q(alpha) = (1/pi) |<alpha|psi>|^2 with the overlap evaluated in the log domain.
QGrid husimi_q(const FockVector& state, const std::vector<double>& x_axis,
               const std::vector<double>& y_axis);
QGrid husimi_q(const FockVector& state, int points = 401);

/// |unitary DFT| of the amplitude vector; Parseval gives sum of squares = 1.
std::vector<double> phase_spectrum(const FockVector& state);

/// density(x) = |sum_n amplitude_n psi_n(x)|^2. The constructed density must
/// integrate to 1 within 1e-6 (trapezoid) or construction fails, so the axis
/// has to cover the state's support.
QuadratureDensity quadrature_density(const FockVector& state, const std::vector<double>& x_axis);
QuadratureDensity quadrature_density(const FockVector& state);

/// Present a density on a rescaled axis x' = scale * x (scale sqrt(2) maps the
/// unit-variance wavefunction convention onto the X = a + a^dag convention).
QuadratureDensity rescale_quadrature(const QuadratureDensity& d, double scale);

/// Trapezoid integral over the full axis.
double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& y);

/// Trapezoid CDF evaluated at xc (piecewise-quadratic, continuous, monotone).
double trapezoid_cdf(const QuadratureDensity& d, double xc);

} // namespace qnd
