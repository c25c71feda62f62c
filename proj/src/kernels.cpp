#include "qnd/kernels.hpp"

#include <cmath>

#include "qnd/oscillator.hpp"

namespace qnd::kernels {

namespace {

// Per-point Husimi overlap <alpha|psi> in the log domain:
//   term_n = exp(-r^2/2 + n ln r - lgamma(n+1)/2) e^{-i n theta} c_n.
// The log magnitude is bounded above by half the log of the Poisson pmf, so
// exp never overflows; far tails underflow to 0 harmlessly.
std::complex<double> husimi_overlap(const FockVector& state, const std::vector<double>& half_lgamma,
                                    double re, double im) {
    const double r = std::hypot(re, im);
    if (r == 0.0)
        return state.n_min == 0 ? state.amplitudes[0] : std::complex<double>(0.0, 0.0);
    const double theta = std::atan2(im, re);
    const double log_r = std::log(r);
    const double half_r2 = 0.5 * r * r;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const double n = static_cast<double>(state.n_min) + static_cast<double>(i);
        const double logmag = -half_r2 + n * log_r - half_lgamma[i];
        if (logmag < -745.0) continue; // exp underflows anyway
        acc += std::polar(std::exp(logmag), -n * theta) * state.amplitudes[i];
    }
    return acc;
}

double density_point(const FockVector& state, double x) {
    OscillatorSeries s(x);
    std::complex<double> acc(0.0, 0.0);
    const int ntop = state.n_top();
    if (state.n_min == 0) acc += state.amplitudes[0] * s.value();
    for (int n = 0; n < ntop; ++n) {
        s.advance();
        const int m = n + 1;
        if (m >= state.n_min)
            acc += state.amplitudes[static_cast<std::size_t>(m - state.n_min)] * s.value();
    }
    return std::norm(acc);
}

} // namespace

std::vector<double> husimi_grid(const FockVector& state, const std::vector<double>& xs,
                                const std::vector<double>& ys, Exec exec) {
    std::vector<double> half_lgamma(state.amplitudes.size());
    for (std::size_t i = 0; i < half_lgamma.size(); ++i)
        half_lgamma[i] = 0.5 * std::lgamma(static_cast<double>(state.n_min) + static_cast<double>(i) + 1.0);

    const long nx = static_cast<long>(xs.size());
    const long ny = static_cast<long>(ys.size());
    std::vector<double> out(static_cast<std::size_t>(nx * ny));
    const bool par = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (par)
    for (long iy = 0; iy < ny; ++iy) {
        for (long ix = 0; ix < nx; ++ix) {
            const auto ov = husimi_overlap(state, half_lgamma, xs[static_cast<std::size_t>(ix)],
                                           ys[static_cast<std::size_t>(iy)]);
            out[static_cast<std::size_t>(iy * nx + ix)] = std::norm(ov) / M_PI;
        }
    }
    return out;
}

std::vector<double> density_values(const FockVector& state, const std::vector<double>& xs,
                                   Exec exec) {
    const long npts = static_cast<long>(xs.size());
    std::vector<double> out(static_cast<std::size_t>(npts));
    const bool par = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < npts; ++i)
        out[static_cast<std::size_t>(i)] = density_point(state, xs[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> dft_abs(const std::vector<std::complex<double>>& a, Exec exec) {
    const long len = static_cast<long>(a.size());
    std::vector<double> out(static_cast<std::size_t>(len));
    const double norm = 1.0 / std::sqrt(static_cast<double>(len));
    const double w = -2.0 * M_PI / static_cast<double>(len);
    const bool par = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (par)
    for (long k = 0; k < len; ++k) {
        std::complex<double> s(0.0, 0.0);
        for (long n = 0; n < len; ++n)
            s += a[static_cast<std::size_t>(n)] *
                 std::polar(1.0, w * static_cast<double>(k) * static_cast<double>(n));
        out[static_cast<std::size_t>(k)] = std::abs(s) * norm;
    }
    return out;
}

} // namespace qnd::kernels
