#pragma once

#include <vector>

namespace qnd {

/// Streaming evaluation of the normalized harmonic-oscillator eigenfunctions
///
///   psi_n(x) = H_n(x) e^{-x^2/2} / (2^n n! sqrt(pi))^{1/2}
///
/// via the normalized three-term recurrence
///
///   psi_{n+1}(x) = sqrt(2/(n+1)) x psi_n(x) - sqrt(n/(n+1)) psi_{n-1}(x),
///   psi_0(x) = pi^{-1/4} e^{-x^2/2},  psi_{-1} = 0.
///
/// The pair (psi_{n-1}, psi_n) is carried as mantissas with a shared power-of-two
/// exponent. The seed e^{-x^2/2} underflows a double already at |x| ~ 38 while
/// the functions themselves return to O(1) near the classical turning point
/// n ~ x^2/2, so plain double recurrence would silently flush entire states to
/// zero; the scaled form stays exact through the underflowing tail. Values are
/// finite (no overflow/NaN) at least up to n = 20000, |x| <= 2 sqrt(2 n).
class OscillatorSeries {
public:
    explicit OscillatorSeries(double x);

    /// Current order n (starts at 0).
    int n() const { return n_; }

    /// psi_n(x) as a double; 0.0 when the true value underflows.
    double value() const;

    /// Step from n to n+1.
    void advance();

private:
    void rescale();

    double x_;
    double prev_ = 0.0; // mantissa of psi_{n-1}
    double cur_;        // mantissa of psi_n
    long exp2_;         // shared binary exponent
    int n_ = 0;
};

/// psi_0(x) ... psi_{n_max}(x).
std::vector<double> oscillator_eigenfunctions(double x, int n_max);

} // namespace qnd
