#pragma once

#include <complex>
#include <vector>

#include "qnd/fock.hpp"

namespace qnd::kernels {

/// Execution policy for the grid kernels. Every output element is computed by
/// an independent serial sum, so serial and parallel runs produce bit-identical
/// results; parallel only distributes elements over threads.
enum class Exec { serial, parallel };

/// Husimi Q values, row-major [iy][ix], units of 1/pi.
std::vector<double> husimi_grid(const FockVector& state, const std::vector<double>& xs,
                                const std::vector<double>& ys, Exec exec);

/// |sum_n c_n psi_n(x)|^2 for every x.
std::vector<double> density_values(const FockVector& state, const std::vector<double>& xs,
                                   Exec exec);

/// Magnitudes of the unitary DFT (1/sqrt(L) normalization, e^{-2 pi i k n / L}).
std::vector<double> dft_abs(const std::vector<std::complex<double>>& a, Exec exec);

} // namespace qnd::kernels
