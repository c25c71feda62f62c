#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "qnd/discrimination.hpp"
#include "qnd/phase_model.hpp"

using namespace qnd;

namespace {

// Frozen working-point values (computed with the default window and axis;
// regression guards against drift, not retuning).
struct TablePoint {
    double n_probe, epsilon, cutoff, success;
};
constexpr TablePoint kTable[] = {
    {10.0, 1e-3, 2.2869577947, 0.7174059498}, {10.0, 1e-2, 2.8271191141, 0.8135527559},
    {30.0, 1e-3, 5.5607482758, 0.7590375829}, {30.0, 1e-2, 6.1009199629, 0.8287258776},
    {50.0, 1e-3, 7.8147511815, 0.8037279770}, {50.0, 1e-2, 8.3549296847, 0.8629786203},
};

QuadratureDensity gaussian_density(double mu, double sigma) {
    QuadratureDensity d;
    const int pts = 40001;
    const double reach = 10.0 * sigma;
    for (int i = 0; i < pts; ++i) {
        const double x = mu - reach + 2.0 * reach * i / (pts - 1);
        d.x_axis.push_back(x);
        d.density.push_back(std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)) /
                            (sigma * std::sqrt(2.0 * M_PI)));
    }
    return d;
}

} // namespace

TEST_CASE("overlap approaches 1 for vanishing coupling") {
    CHECK(overlap_probability(10.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("working-point overlap at Np = 10") {
    const double ov = overlap_probability(10.0, 0.7 / std::sqrt(10.0));
    CHECK(ov == doctest::Approx(0.0964285731625523).epsilon(1e-9));
    CHECK(1.0 - ov == doctest::Approx(0.9035714268).epsilon(1e-7));
}

TEST_CASE("overlap nearly vanishes across the working band at Np = 300") {
    double best = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double coef = 0.7 + (1.4 - 0.7) * i / 100.0;
        best = std::fmin(best, overlap_probability(300.0, coef / std::sqrt(300.0)));
    }
    CHECK(best < 0.02);
}

TEST_CASE("median cutoff of a symmetric density is zero") {
    const auto d = gaussian_density(0.0, 1.0);
    CHECK(std::fabs(cutoff_for_false_positive(d, 0.5)) < 1e-6);
}

TEST_CASE("gaussian cutoff matches the inverse-error-function value") {
    // P(X > xc) = 0.999 => xc = mu - 3.090232 sigma
    const double mu = 2.0, sigma = 1.3;
    const auto d = gaussian_density(mu, sigma);
    const double xc = cutoff_for_false_positive(d, 1e-3);
    CHECK(std::fabs(xc - (mu - 3.090232306 * sigma)) < 1e-3 * sigma);
}

TEST_CASE("cutoff domain and CDF self-consistency") {
    const auto d = gaussian_density(0.0, 1.0);
    CHECK_THROWS_AS(cutoff_for_false_positive(d, 0.0), std::domain_error);
    CHECK_THROWS_AS(cutoff_for_false_positive(d, 1.0), std::domain_error);

    for (double eps : {1e-3, 1e-2, 0.1}) {
        const double xc = cutoff_for_false_positive(d, eps);
        CHECK(trapezoid_cdf(d, xc) == doctest::Approx(eps).epsilon(1e-6));
    }
}

TEST_CASE("success rate clamps outside the axis") {
    const auto d = gaussian_density(0.0, 1.0);
    CHECK(success_rate(d, d.x_axis.front() - 1.0) == 0.0);
    CHECK(success_rate(d, d.x_axis.back() + 1.0) == 1.0);
}

TEST_CASE("success-rate table at the working points") {
    for (const auto& t : kTable) {
        const auto r = discriminate(t.n_probe, 0.7 / std::sqrt(t.n_probe), t.epsilon);
        CHECK(r.cutoff == doctest::Approx(t.cutoff).epsilon(5e-6));
        CHECK(r.success == doctest::Approx(t.success).epsilon(5e-6));
        CHECK(r.max_success_bound == 1.0 - r.overlap_sq);
        CHECK(r.success <= 1.0);
        // any vanishing-error measurement is bounded by 1 - overlap
        if (t.epsilon <= 1e-3) CHECK(r.success <= r.max_success_bound + 0.02);
    }
}

TEST_CASE("success rates are invariant under the quadrature scale") {
    for (double eps : {1e-3, 1e-2}) {
        const auto a = discriminate(10.0, 0.7 / std::sqrt(10.0), eps, 1.0);
        const auto b = discriminate(10.0, 0.7 / std::sqrt(10.0), eps, std::sqrt(2.0));
        CHECK(a.success == doctest::Approx(b.success).epsilon(1e-9));
        CHECK(b.cutoff == doctest::Approx(a.cutoff * std::sqrt(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("success is non-decreasing in the allowed false-positive rate") {
    const std::vector<double> eps = {5e-4, 1e-3, 5e-3, 1e-2, 5e-2, 0.1};
    const auto rows = roc_table({10.0}, ChiRule{}, eps);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].cutoff >= rows[i - 1].cutoff); // larger eps admits a higher cutoff
        CHECK(rows[i].success >= rows[i - 1].success);
    }
}

TEST_CASE("reports are deterministic") {
    const auto a = roc_table({10.0, 30.0}, ChiRule{}, {1e-3, 1e-2});
    const auto b = roc_table({10.0, 30.0}, ChiRule{}, {1e-3, 1e-2});
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(DiscriminationReport)) == 0);
}

TEST_CASE("single-point sweep degenerates to overlap_probability") {
    const double chi = 0.7 / std::sqrt(42.0);
    const auto s = overlap_sweep(OverlapAxis::chi, {chi}, 42.0, ChiRule{});
    REQUIRE(s.size() == 1);
    CHECK(s[0].overlap_sq == overlap_probability(42.0, chi));
}

TEST_CASE("quadrature pictures: localized reference vs broad signal state") {
    const double np = 10.0;
    const double chi = 0.7 / std::sqrt(np);
    const auto initial = coherent_amplitudes(np);
    const auto profile = compensated_phase_profile(chi, np, initial.n_min, initial.n_top());
    const auto final_state = apply_cross_phase(initial, profile);
    const auto axis = quadrature_auto_axis(initial);
    const auto d0 = quadrature_density(initial, axis);
    const auto d1 = quadrature_density(final_state, axis);

    // reference state: displaced near-Gaussian at x = sqrt(2 Np), almost no
    // mass below zero
    std::size_t peak = 0;
    for (std::size_t i = 1; i < d0.density.size(); ++i)
        if (d0.density[i] > d0.density[peak]) peak = i;
    CHECK(d0.x_axis[peak] == doctest::Approx(std::sqrt(2.0 * np)).epsilon(0.01));
    CHECK(trapezoid_cdf(d0, 0.0) < 1e-6);

    // phase-dispersed state: broad, with large mass at low and negative x
    CHECK(trapezoid_cdf(d1, 0.0) == doctest::Approx(0.46238847).epsilon(1e-4));
}

TEST_CASE("photon-number sweep decays roughly as 1/sqrt(Np)") {
    std::vector<double> values;
    for (int i = 0; i < 150; ++i) values.push_back(10.0 * std::pow(100.0, i / 149.0));
    const auto s = overlap_sweep(OverlapAxis::n_probe, values, 0.0, ChiRule{});
    const double slope = loglog_slope(s);
    CHECK(slope == doctest::Approx(-0.54).epsilon(0.1));
}
