#include "qnd/discrimination.hpp"

#include <cmath>
#include <stdexcept>

#include "qnd/phase_model.hpp"

namespace qnd {

double ChiRule::at(double n_probe) const {
    if (kind == Kind::fixed) return value;
    if (!(n_probe > 0.0)) throw std::domain_error("ChiRule: n_probe must be > 0 for scaled rule");
    return value / std::sqrt(n_probe);
}

double overlap_probability(double n_probe, double chi, double window_sigmas) {
    if (!(n_probe > 0.0)) throw std::domain_error("overlap_probability: n_probe must be > 0");
    if (!(chi > 0.0)) throw std::domain_error("overlap_probability: chi must be > 0");
    const FockVector initial = coherent_amplitudes(n_probe, window_sigmas);
    const PhaseProfile profile =
        compensated_phase_profile(chi, n_probe, initial.n_min, initial.n_top());
    const FockVector final_state = apply_cross_phase(initial, profile);
    return std::norm(inner_product(initial, final_state));
}

double cutoff_for_false_positive(const QuadratureDensity& no_signal, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("cutoff_for_false_positive: epsilon must lie in (0, 1)");
    double lo = no_signal.x_axis.front();
    double hi = no_signal.x_axis.back();
    // Bisection on the continuous trapezoid CDF; 200 halvings push the
    // bracket far below the 1e-9 CDF tolerance.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (trapezoid_cdf(no_signal, mid) < epsilon)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double success_rate(const QuadratureDensity& signal, double cutoff) {
    if (cutoff <= signal.x_axis.front()) return 0.0;
    if (cutoff >= signal.x_axis.back()) return 1.0;
    return trapezoid_cdf(signal, cutoff);
}

DiscriminationReport discriminate(double n_probe, double chi, double epsilon, double quad_scale,
                                  double window_sigmas) {
    const FockVector initial = coherent_amplitudes(n_probe, window_sigmas);
    const PhaseProfile profile =
        compensated_phase_profile(chi, n_probe, initial.n_min, initial.n_top());
    const FockVector final_state = apply_cross_phase(initial, profile);

    const auto axis = quadrature_auto_axis(initial);
    QuadratureDensity no_signal = quadrature_density(initial, axis);
    QuadratureDensity signal = quadrature_density(final_state, axis);
    if (quad_scale != 1.0) {
        no_signal = rescale_quadrature(no_signal, quad_scale);
        signal = rescale_quadrature(signal, quad_scale);
    }

    DiscriminationReport r;
    r.n_probe = n_probe;
    r.chi = chi;
    r.overlap_sq = std::norm(inner_product(initial, final_state));
    r.max_success_bound = 1.0 - r.overlap_sq;
    r.false_positive = epsilon;
    r.cutoff = cutoff_for_false_positive(no_signal, epsilon);
    r.success = success_rate(signal, r.cutoff);
    return r;
}

std::vector<DiscriminationReport> roc_table(const std::vector<double>& n_probes,
                                            const ChiRule& rule,
                                            const std::vector<double>& epsilons,
                                            double quad_scale) {
    std::vector<DiscriminationReport> out;
    out.reserve(n_probes.size() * epsilons.size());
    for (double np : n_probes)
        for (double eps : epsilons) out.push_back(discriminate(np, rule.at(np), eps, quad_scale));
    return out;
}

std::vector<OverlapSample> overlap_sweep(OverlapAxis axis, const std::vector<double>& values,
                                         double fixed_n_probe, const ChiRule& rule) {
    std::vector<OverlapSample> out(values.size());
    const long count = static_cast<long>(values.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        OverlapSample s;
        s.axis_value = v;
        s.overlap_sq = axis == OverlapAxis::chi ? overlap_probability(fixed_n_probe, v)
                                                : overlap_probability(v, rule.at(v));
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

double loglog_slope(const std::vector<OverlapSample>& samples) {
    if (samples.size() < 2) throw std::domain_error("loglog_slope: need at least 2 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        const double lx = std::log(s.axis_value);
        const double ly = std::log(s.overlap_sq);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace qnd
