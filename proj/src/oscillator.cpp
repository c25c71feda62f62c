#include "qnd/oscillator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnd {

namespace {

// Mantissas are kept inside [2^-500, 2^500]; one rescale step moves them by
// 2^+-512 so a single check per iteration suffices even for x ~ 400 where the
// seed sits 10^5 binades below 1.
constexpr double kUpper = 0x1p500;
constexpr double kLower = 0x1p-500;
constexpr int kShift = 512;
constexpr long kMinExp = -1100; // below this ldexp flushes to 0 anyway

} // namespace

OscillatorSeries::OscillatorSeries(double x) : x_(x) {
    if (!std::isfinite(x)) throw std::domain_error("oscillator: x must be finite");
    // psi_0 = pi^{-1/4} e^{-x^2/2}, carried as mantissa * 2^exp
    const double log2_psi0 = (-0.25 * std::log(M_PI) - 0.5 * x * x) / M_LN2;
    const double e0 = std::floor(log2_psi0);
    exp2_ = static_cast<long>(e0);
    cur_ = std::exp2(log2_psi0 - e0);
}

double OscillatorSeries::value() const {
    if (cur_ == 0.0) return 0.0;
    if (exp2_ < kMinExp) return 0.0;
    if (exp2_ > 1000) return std::numeric_limits<double>::infinity(); // unreachable for valid input
    return std::ldexp(cur_, static_cast<int>(exp2_));
}

void OscillatorSeries::advance() {
    const double n = static_cast<double>(n_);
    const double next =
        std::sqrt(2.0 / (n + 1.0)) * x_ * cur_ - std::sqrt(n / (n + 1.0)) * prev_;
    prev_ = cur_;
    cur_ = next;
    ++n_;
    rescale();
}

void OscillatorSeries::rescale() {
    const double a = std::fmax(std::fabs(cur_), std::fabs(prev_));
    if (a > kUpper) {
        cur_ = std::ldexp(cur_, -kShift);
        prev_ = std::ldexp(prev_, -kShift);
        exp2_ += kShift;
    } else if (a > 0.0 && a < kLower) {
        cur_ = std::ldexp(cur_, kShift);
        prev_ = std::ldexp(prev_, kShift);
        exp2_ -= kShift;
    }
}

std::vector<double> oscillator_eigenfunctions(double x, int n_max) {
    if (n_max < 0) throw std::domain_error("oscillator: n_max must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    OscillatorSeries s(x);
    out[0] = s.value();
    for (int n = 1; n <= n_max; ++n) {
        s.advance();
        out[static_cast<std::size_t>(n)] = s.value();
    }
    return out;
}

} // namespace qnd
