#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qnd/oscillator.hpp"

using qnd::oscillator_eigenfunctions;

namespace {

// Direct evaluation via physicists' Hermite polynomials (exact integer
// coefficients up to n = 12), used as the independent low-order reference for
// the recurrence.
double psi_direct(int n, double x) {
    double h_prev = 1.0;             // H_0
    double h_cur = 2.0 * x;          // H_1
    if (n == 0) h_cur = h_prev;
    for (int k = 1; k < n; ++k) {
        const double h_next = 2.0 * x * h_cur - 2.0 * k * h_prev;
        h_prev = h_cur;
        h_cur = h_next;
    }
    double log_norm = 0.0; // log(2^n n! sqrt(pi))/2
    for (int k = 1; k <= n; ++k) log_norm += std::log(2.0 * k);
    log_norm = 0.5 * (log_norm + 0.5 * std::log(M_PI));
    return h_cur * std::exp(-0.5 * x * x - log_norm);
}

} // namespace

TEST_CASE("ground state at the origin") {
    const auto psi = oscillator_eigenfunctions(0.0, 0);
    CHECK(psi[0] == doctest::Approx(0.7511255444649425).epsilon(1e-12)); // pi^{-1/4}
}

TEST_CASE("odd orders vanish at the origin") {
    const auto psi = oscillator_eigenfunctions(0.0, 31);
    for (int n = 1; n <= 31; n += 2) CHECK(psi[static_cast<std::size_t>(n)] == 0.0);
}

TEST_CASE("recurrence matches direct Hermite evaluation for n <= 12") {
    for (double x : {-3.7, -1.0, 0.0, 0.25, 2.0, 5.5}) {
        const auto psi = oscillator_eigenfunctions(x, 12);
        for (int n = 0; n <= 12; ++n)
            CHECK(psi[static_cast<std::size_t>(n)] ==
                  doctest::Approx(psi_direct(n, x)).epsilon(1e-10));
    }
}

TEST_CASE("orthonormality up to n = 50 under trapezoid quadrature") {
    const int nmax = 50;
    const int pts = 20001;
    const double reach = 22.0;
    const double dx = 2.0 * reach / (pts - 1);

    std::vector<std::vector<double>> table(static_cast<std::size_t>(pts));
    for (int i = 0; i < pts; ++i)
        table[static_cast<std::size_t>(i)] = oscillator_eigenfunctions(-reach + dx * i, nmax);

    for (int n = 0; n <= nmax; ++n) {
        for (int m = n; m <= nmax; ++m) {
            double integral = 0.0;
            for (int i = 0; i < pts; ++i) {
                const double w = (i == 0 || i == pts - 1) ? 0.5 : 1.0;
                integral += w * table[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] *
                            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
            }
            integral *= dx;
            const double expected = n == m ? 1.0 : 0.0;
            CHECK(std::fabs(integral - expected) < 1e-8);
        }
    }
}

TEST_CASE("stable and bounded out to n = 20000") {
    const double bound = 0.7511255444649426; // psi_0(0) bounds all |psi_n(x)|
    for (double x : {0.0, 1.0, 50.0, 100.0, 200.0, 400.0}) {
        const auto psi = oscillator_eigenfunctions(x, 20000);
        for (double v : psi) {
            CHECK(std::isfinite(v));
            CHECK(std::fabs(v) <= bound);
        }
    }
}

TEST_CASE("deep-tail seeds do not flush the classical region to zero") {
    // e^{-x^2/2} underflows a double at x = 100, yet psi_n(100) for
    // n ~ x^2/2 = 5000 is O(0.1); the scaled recurrence must recover it.
    const auto psi = oscillator_eigenfunctions(100.0, 5200);
    CHECK(psi[0] == 0.0); // true value ~ 1e-2172, flushed
    double peak = 0.0;
    for (double v : psi) peak = std::fmax(peak, std::fabs(v));
    CHECK(peak > 0.05);
    CHECK(peak < 0.7511255444649426);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(oscillator_eigenfunctions(0.0, -1), std::domain_error);
    CHECK_THROWS_AS(oscillator_eigenfunctions(std::nan(""), 3), std::domain_error);
}
