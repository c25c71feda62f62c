#pragma once

#include <vector>

#include "qnd/fock.hpp"

namespace qnd {

/// How the coupling ratio chi = g^2/(kappa Delta) is chosen when a sweep or
/// table varies the probe photon number.
struct ChiRule {
    enum class Kind { scaled, fixed };
    Kind kind = Kind::scaled;
    double value = 0.7; // scaled: chi = value / sqrt(Np); fixed: chi = value

    double at(double n_probe) const;
};

/// One row of the discrimination analysis between the probe states with and
/// without a signal photon.
struct DiscriminationReport {
    double n_probe = 0.0;
    double chi = 0.0;
    double overlap_sq = 0.0;        // |<psi0|psi1>|^2
    double max_success_bound = 0.0; // 1 - overlap_sq
    double cutoff = 0.0;            // quadrature decision threshold x_c
    double false_positive = 0.0;    // epsilon
    double success = 0.0;           // P(X < x_c | signal)
};

/// |<psi0|psi1>|^2 for the coherent probe against the cross-phased probe.
double overlap_probability(double n_probe, double chi, double window_sigmas = 10.0);

/// x_c with P(X > x_c | no signal) = 1 - epsilon, by bisection on the
/// trapezoid CDF to |CDF - epsilon| < 1e-9. epsilon outside (0,1) is a
/// domain error.
double cutoff_for_false_positive(const QuadratureDensity& no_signal, double epsilon);

/// P(X < cutoff | signal), trapezoid CDF. Clamps to 0/1 outside the axis.
double success_rate(const QuadratureDensity& signal, double cutoff);

/// Full report at one (n_probe, chi, epsilon) point. quad_scale relabels the
/// x axis (1 = unit-variance wavefunction convention, sqrt(2) = a + a^dag);
/// the success rate is invariant under it, the cutoff is not.
DiscriminationReport discriminate(double n_probe, double chi, double epsilon,
                                  double quad_scale = 1.0, double window_sigmas = 10.0);

/// One report per (n_probe, epsilon) pair, row order n_probe-major.
std::vector<DiscriminationReport> roc_table(const std::vector<double>& n_probes,
                                            const ChiRule& rule,
                                            const std::vector<double>& epsilons,
                                            double quad_scale = 1.0);

enum class OverlapAxis { chi, n_probe };

struct OverlapSample {
    double axis_value = 0.0;
    double overlap_sq = 0.0;
};

/// Overlap curve along chi (fixed n_probe; values are chi) or along n_probe
/// (values are photon numbers; chi follows the rule).
std::vector<OverlapSample> overlap_sweep(OverlapAxis axis, const std::vector<double>& values,
                                         double fixed_n_probe, const ChiRule& rule);

/// Least-squares slope of ln(overlap) against ln(axis value).
double loglog_slope(const std::vector<OverlapSample>& samples);

} // namespace qnd
