#include "qnd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnd/errors.hpp"
#include "qnd/kernels.hpp"

namespace qnd {

double FockVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

FockVector coherent_amplitudes(double n_probe, double window_halfwidth_sigmas, double phase,
                               double deficit_tolerance) {
    if (n_probe < 0.0 || !std::isfinite(n_probe))
        throw std::domain_error("coherent_amplitudes: mean photon number must be >= 0");
    if (window_halfwidth_sigmas < 1.0)
        throw std::domain_error("coherent_amplitudes: window halfwidth must be >= 1 sigma");

    FockVector v;
    if (n_probe == 0.0) {
        v.amplitudes = {std::complex<double>(1.0, 0.0)};
        return v;
    }

    const double sigma = std::sqrt(n_probe);
    const int lo = std::max(0, static_cast<int>(std::floor(n_probe - window_halfwidth_sigmas * sigma)));
    const int hi = static_cast<int>(std::ceil(n_probe + window_halfwidth_sigmas * sigma));
    v.n_min = lo;
    v.amplitudes.resize(static_cast<std::size_t>(hi - lo) + 1);

    const double log_np = std::log(n_probe);
    double total = 0.0;
    for (int n = lo; n <= hi; ++n) {
        // log c_n = -Np/2 + (n/2) ln Np - lgamma(n+1)/2
        const double logc = -0.5 * n_probe + 0.5 * n * log_np - 0.5 * std::lgamma(n + 1.0);
        const double mag = std::exp(logc);
        v.amplitudes[static_cast<std::size_t>(n - lo)] = std::polar(mag, n * phase);
        total += mag * mag;
    }

    v.truncation_deficit = std::max(0.0, 1.0 - total);
    if (v.truncation_deficit >= deficit_tolerance)
        throw TruncationError("coherent_amplitudes: truncated probability mass " +
                              std::to_string(v.truncation_deficit) + " exceeds tolerance");

    const double inv = 1.0 / std::sqrt(total);
    for (auto& a : v.amplitudes) a *= inv;
    return v;
}

FockVector fock_basis_state(int n) {
    if (n < 0) throw std::domain_error("fock_basis_state: n must be >= 0");
    FockVector v;
    v.n_min = n;
    v.amplitudes = {std::complex<double>(1.0, 0.0)};
    return v;
}

std::complex<double> inner_product(const FockVector& a, const FockVector& b) {
    const int lo = std::max(a.n_min, b.n_min);
    const int hi = std::min(a.n_top(), b.n_top());
    std::complex<double> s(0.0, 0.0);
    for (int n = lo; n <= hi; ++n)
        s += std::conj(a.amplitudes[static_cast<std::size_t>(n - a.n_min)]) *
             b.amplitudes[static_cast<std::size_t>(n - b.n_min)];
    return s;
}

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> v(static_cast<std::size_t>(points));
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
    return v;
}

} // namespace

std::vector<double> husimi_auto_axis(const FockVector& state, int points) {
    if (points < 2) throw std::domain_error("husimi_auto_axis: need at least 2 points");
    const double radius = std::sqrt(static_cast<double>(state.n_top() + 1)) + 3.0;
    return linspace(-radius, radius, points);
}

std::vector<double> quadrature_auto_axis(const FockVector& state, int base_points) {
    if (base_points < 2) throw std::domain_error("quadrature_auto_axis: need at least 2 points");
    const double ntop = std::max(1, state.n_top());
    // +6 keeps the Gaussian tail below 1e-6 for small n, where twice the
    // classical turning point alone is not wide enough
    const double reach = 2.0 * std::sqrt(2.0 * ntop) + 6.0;
    // >= 8 samples per oscillation wavelength pi/sqrt(2 ntop)
    const int nyquist =
        static_cast<int>(std::ceil(16.0 * reach * std::sqrt(2.0 * ntop) / M_PI)) | 1;
    return linspace(-reach, reach, std::max(base_points, nyquist));
}

QGrid husimi_q(const FockVector& state, const std::vector<double>& x_axis,
               const std::vector<double>& y_axis) {
    if (x_axis.size() < 2 || y_axis.size() < 2)
        throw std::domain_error("husimi_q: axes need at least 2 points");
    for (std::size_t i = 1; i < x_axis.size(); ++i)
        if (x_axis[i] <= x_axis[i - 1]) throw std::domain_error("husimi_q: x axis not increasing");
    for (std::size_t i = 1; i < y_axis.size(); ++i)
        if (y_axis[i] <= y_axis[i - 1]) throw std::domain_error("husimi_q: y axis not increasing");

    QGrid grid;
    grid.x_axis = x_axis;
    grid.y_axis = y_axis;
    grid.values = kernels::husimi_grid(state, x_axis, y_axis, kernels::Exec::parallel);
    return grid;
}

QGrid husimi_q(const FockVector& state, int points) {
    const auto axis = husimi_auto_axis(state, points);
    return husimi_q(state, axis, axis);
}

std::vector<double> phase_spectrum(const FockVector& state) {
    return kernels::dft_abs(state.amplitudes, kernels::Exec::parallel);
}

QuadratureDensity quadrature_density(const FockVector& state, const std::vector<double>& x_axis) {
    if (x_axis.size() < 2) throw std::domain_error("quadrature_density: axis needs >= 2 points");
    QuadratureDensity d;
    d.x_axis = x_axis;
    d.density = kernels::density_values(state, x_axis, kernels::Exec::parallel);
    const double total = trapezoid_integral(d.x_axis, d.density);
    if (std::fabs(total - 1.0) > 1e-6)
        throw TruncationError("quadrature_density: axis does not capture the state (integral " +
                              std::to_string(total) + ")");
    return d;
}

QuadratureDensity quadrature_density(const FockVector& state) {
    return quadrature_density(state, quadrature_auto_axis(state));
}

QuadratureDensity rescale_quadrature(const QuadratureDensity& d, double scale) {
    if (scale <= 0.0) throw std::domain_error("rescale_quadrature: scale must be > 0");
    QuadratureDensity out;
    out.x_axis.reserve(d.x_axis.size());
    out.density.reserve(d.density.size());
    for (double x : d.x_axis) out.x_axis.push_back(scale * x);
    for (double p : d.density) out.density.push_back(p / scale);
    return out;
}

double trapezoid_integral(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

double trapezoid_cdf(const QuadratureDensity& d, double xc) {
    const auto& x = d.x_axis;
    const auto& p = d.density;
    if (xc <= x.front()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] < xc) {
            s += 0.5 * (p[i] + p[i - 1]) * (x[i] - x[i - 1]);
        } else {
            // partial cell: integrate the linear density up to xc
            const double h = x[i] - x[i - 1];
            const double t = xc - x[i - 1];
            const double pc = p[i - 1] + (p[i] - p[i - 1]) * t / h;
            s += 0.5 * (p[i - 1] + pc) * t;
            return s;
        }
    }
    return s;
}

} // namespace qnd
