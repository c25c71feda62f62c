#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qnd/fock.hpp"
#include "qnd/phase_model.hpp"

using namespace qnd;

TEST_CASE("per-photon phase") {
    CHECK(per_photon_phase(0.03, 0.0) == 4.0 * 0.03);          // empty cavity
    CHECK(per_photon_phase(0.5, 1.0) == doctest::Approx(1.0)); // 2/(1+1)

    // strictly decreasing in the ground-state population
    double prev = per_photon_phase(0.03, 0.0);
    for (int n = 1; n <= 10000; ++n) {
        const double cur = per_photon_phase(0.03, static_cast<double>(n));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("steady cavity ratio") {
    const double kappa = 3.7e8;
    const auto empty = steady_cavity_ratio(0.02, 0.0, kappa);
    CHECK(empty.imag() == 0.0);
    CHECK(empty.real() == doctest::Approx(std::sqrt(2.0 / kappa)).epsilon(1e-14));

    // |ratio|^2 ties the field buildup to the per-photon phase:
    // Phi = 2 chi kappa |E/E_in|^2
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> chi_d(1e-4, 0.5), n_d(0.0, 5000.0),
        kap_d(1e6, 1e9);
    for (int i = 0; i < 200; ++i) {
        const double chi = chi_d(rng), n = std::floor(n_d(rng)), kap = kap_d(rng);
        const auto ratio = steady_cavity_ratio(chi, n, kap);
        CHECK(per_photon_phase(chi, n) ==
              doctest::Approx(2.0 * chi * kap * std::norm(ratio)).epsilon(1e-12));
        CHECK(std::arg(ratio) == doctest::Approx(std::atan(2.0 * n * chi)).epsilon(1e-12));
    }
}

TEST_CASE("compensated profile values and invariants") {
    const double chi = 0.7 / std::sqrt(100.0); // 0.07
    const auto p = compensated_phase_profile(chi, 100.0, 0, 200);

    CHECK(p.phi_at(100) == 4.0 * chi); // zero residual detuning
    // one sigma off the mean: 4 chi / (1 + (2*10*0.07)^2) = 4 chi / 2.96
    CHECK(p.phi_at(110) == doctest::Approx(4.0 * chi / 2.96).epsilon(1e-12));
    CHECK(p.phi_at(90) == doctest::Approx(4.0 * chi / 2.96).epsilon(1e-12));

    int argmax = p.n_min;
    for (int n = p.n_min; n <= p.n_top(); ++n) {
        CHECK(p.phi_at(n) > 0.0);
        CHECK(p.phi_at(n) <= 4.0 * chi);
        CHECK(p.theta_at(n) > -M_PI);
        CHECK(p.theta_at(n) < M_PI);
        if (p.phi_at(n) > p.phi_at(argmax)) argmax = n;
    }
    CHECK(argmax == 100); // peak at the n nearest Np
}

TEST_CASE("compensation identity: uncompensated at N = Np matches exactly") {
    const double chi = 0.041;
    const auto comp = compensated_phase_profile(chi, 64.0, 20, 120);
    const auto unc = uncompensated_phase_profile(chi, 64.0, 64.0, 20, 120);
    CHECK_FALSE(unc.compensated);
    for (int n = 20; n <= 120; ++n) CHECK(comp.phi_at(n) == unc.phi_at(n));
}

TEST_CASE("cross phase preserves the photon-number distribution") {
    const auto state = coherent_amplitudes(100.0);
    const auto p = compensated_phase_profile(0.07, 100.0, state.n_min, state.n_top());
    const auto out = apply_cross_phase(state, p);

    REQUIRE(out.amplitudes.size() == state.amplitudes.size());
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i)
        CHECK(std::fabs(std::abs(out.amplitudes[i]) - std::abs(state.amplitudes[i])) < 1e-15);
    CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero profile is the identity") {
    const auto state = coherent_amplitudes(50.0);
    const auto p = compensated_phase_profile(0.0, 50.0, state.n_min, state.n_top());
    const auto out = apply_cross_phase(state, p);
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i)
        CHECK(out.amplitudes[i] == state.amplitudes[i]);
}

TEST_CASE("constant profile rotates the coherent state rigidly") {
    const double phi0 = 0.31;
    const auto state = coherent_amplitudes(36.0);
    PhaseProfile p;
    p.chi = 0.0;
    p.n_probe = 36.0;
    p.n_min = state.n_min;
    p.phi.assign(state.amplitudes.size(), phi0);
    p.theta.assign(state.amplitudes.size(), 0.0);

    const auto out = apply_cross_phase(state, p);
    const auto rotated = coherent_amplitudes(36.0, 10.0, phi0);
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i)
        CHECK(std::abs(out.amplitudes[i] - rotated.amplitudes[i]) < 1e-14);
}

TEST_CASE("free-space limit: weak coupling reduces to a rigid rotation") {
    const double np = 100.0;
    const double chi = 0.01 / std::sqrt(np); // chi sqrt(Np) = 0.01
    const auto state = coherent_amplitudes(np);
    const auto p = compensated_phase_profile(chi, np, state.n_min, state.n_top());
    const auto out = apply_cross_phase(state, p);
    const auto rotated = coherent_amplitudes(np, 10.0, 4.0 * chi);
    CHECK(std::norm(inner_product(rotated, out)) > 0.999);
}

TEST_CASE("profile window must cover the state") {
    const auto state = coherent_amplitudes(100.0);
    const auto narrow = compensated_phase_profile(0.07, 100.0, state.n_min + 1, state.n_top());
    CHECK_THROWS_AS(apply_cross_phase(state, narrow), std::domain_error);
}

TEST_CASE("reflection phase and coefficient") {
    CHECK(reflection_phase(0.03, 500.0, 500.0) == 0.0);
    for (int m : {1, 7, 40})
        CHECK(reflection_phase(0.03, 500.0, 500.0 + m) ==
              -reflection_phase(0.03, 500.0, 500.0 - m));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> chi_d(1e-5, 1.0), np_d(0.0, 6000.0);
    for (int i = 0; i < 10000; ++i) {
        const double chi = chi_d(rng), np = np_d(rng), n = std::floor(np_d(rng));
        const auto r = reflection_coefficient(chi, np, n);
        CHECK(std::fabs(std::abs(r) - 1.0) < 1e-12);
        CHECK(std::arg(r) == doctest::Approx(reflection_phase(chi, np, n)).epsilon(1e-12));
    }
}

TEST_CASE("cavity parameter validation collects every violation") {
    CavityParams p;
    p.g = 2.0 * M_PI * 8e6;
    p.kappa = 2.0 * M_PI * 30e6;
    p.delta = 2.0 * M_PI * 100e6;
    p.gamma = 2.0 * M_PI * 1e3;
    p.gamma_r = 2.0 * M_PI * 1e3;
    p.n_atoms = 1e5;
    p.n_probe = 6000.0;
    p.eta_r = 0.5;
    CHECK(p.validate().empty());
    CHECK(p.advisories().empty());

    p.n_probe = 2e4; // above 10% of the ensemble: advisory only
    CHECK(p.validate().empty());
    CHECK(p.advisories().size() == 1);

    p.n_probe = 6e4; // above half the ensemble: violation
    p.eta_r = 1.5;
    p.gamma = 0.0;
    const auto v = p.validate();
    CHECK(v.size() == 3);
}

TEST_CASE("geometry consistency is enforced") {
    CavityParams p;
    p.g = 1e7;
    p.kappa = 1e8;
    p.delta = 1e9;
    p.gamma = 1e3;
    p.gamma_r = 1e3;
    p.n_atoms = 1e5;
    p.n_probe = 100.0;
    p.eta_r = 1.0;
    Geometry ge;
    ge.wavelength = 879e-9;
    ge.refractive_index = 2.14;
    ge.mode_area = 0.8e-12;
    ge.mode_length = 12e-6;
    ge.finesse = 9000.0;
    ge.quality_factor = ge.finesse * 2.0 * ge.mode_length / (ge.wavelength / ge.refractive_index);
    ge.mode_volume = ge.mode_area * ge.mode_length;
    p.geometry = ge;
    CHECK(p.validate().empty());

    p.geometry->quality_factor *= 1.01;
    CHECK(p.validate().size() == 1);
}
