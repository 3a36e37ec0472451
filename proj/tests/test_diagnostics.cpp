#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "test_common.hpp"
#include "wlab/diagnostics.hpp"
#include "wlab/propagator.hpp"

using namespace wlab;

namespace {

WignerState pure_state(const PhaseSpaceGrid& g, double x0, double p0,
                       double sigma) {
    auto w = z_to_wigner(pure_to_z(gaussian_wavepacket(g, x0, p0, sigma), g), g);
    normalize(w, g);
    return w;
}

}  // namespace

TEST_CASE("diagnostics: purity of pure states and mixtures") {
    const auto g = test::default_grid();
    const auto w = pure_state(g, 0.0, 0.0, 1.0);
    CHECK(std::abs(purity(w, g) - 1.0) < 1e-8);

    // Equal mixture of two far-separated packets: Tr ρ² = 1/2.
    const auto wa = pure_state(g, -3.0, 0.0, 0.5);
    const auto wb = pure_state(g, 3.0, 0.0, 0.5);
    WignerState mix;
    mix.f.resize(g.size());
    for (std::size_t m = 0; m < g.size(); ++m)
        mix.f[m] = 0.5 * (wa.f[m] + wb.f[m]);
    CHECK(std::abs(purity(mix, g) - 0.5) < 1e-4);
}

TEST_CASE("diagnostics: energy of a boosted free packet") {
    const auto g = test::default_grid();
    const double p0 = 2.0, sigma = 1.0, mass = 1.5;
    const auto w = pure_state(g, 0.0, p0, sigma);
    const double expected =
        p0 * p0 / (2 * mass) + g.hbar * g.hbar / (8 * mass * sigma * sigma);
    CHECK(std::abs(energy(w, g, Potential::free_particle(), mass) - expected) <
          1e-6);
}

TEST_CASE("diagnostics: dense purity agrees with the Wigner integral") {
    const auto g = build_phase_space_grid(128, 128, -6, 6, -10, 10, 1.0);
    WignerState w = pure_state(g, 0.6, 0.0, 0.5);

    const auto dm0 = assemble_density_matrix(wigner_to_z(w, g), g);
    CHECK(std::abs(dense_purity(dm0, g) - purity(w, g)) < 1e-6);

    // Short anharmonic classical evolution: the two purity routes must keep
    // agreeing on the evolved, no-longer-Gaussian state.
    PropagatorConfig cfg;
    cfg.mechanics = Mechanics::classical;
    cfg.potential = Potential::quartic(1.0);
    cfg.dt = 1e-3;
    cfg.n_steps = 500;
    cfg.record_every = 500;
    const auto traj = evolve(w, g, cfg);
    const auto& evolved = traj.snapshots.back();
    const auto dm = assemble_density_matrix(wigner_to_z(evolved, g), g);
    CHECK(std::abs(dense_purity(dm, g) - purity(evolved, g)) < 1e-4);
}

TEST_CASE("diagnostics: min eigenvalue of valid states is non-negative") {
    const auto g = test::default_grid();
    const auto w = pure_state(g, 0.0, 0.5, 1.0);
    const auto me = min_eigenvalue(wigner_to_z(w, g), g);
    CHECK_FALSE(me.low_confidence);
    CHECK(me.value > -1e-8);
    CHECK(me.value < 1e-8);
}

TEST_CASE("diagnostics: random probes bound the smallest eigenvalue") {
    // Rank-3 PSD test matrix with a known null space.
    const int n = 64;
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd a(n, 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 3; ++j)
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(a)
                                   .householderQ() *
                               Eigen::MatrixXcd::Identity(n, 3);
    Eigen::Vector3d lam(1.0, 0.5, 0.25);
    const Eigen::MatrixXcd rho =
        q * lam.asDiagonal() * q.adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                       Eigen::EigenvaluesOnly);
    const double eig_min = es.eigenvalues().minCoeff();

    const double probe = random_probe_min_eig(rho, 64, 200, 12345);
    CHECK(probe >= eig_min - 1e-12);       // Rayleigh quotients never undershoot
    CHECK(std::abs(probe - eig_min) < 1e-8);  // and at least one probe converges
}

TEST_CASE("diagnostics: band and diagonal divergences") {
    const auto g = test::default_grid(64);
    const auto wa = pure_state(g, 0.0, 0.0, 1.0);
    const auto za = wigner_to_z(wa, g);

    SUBCASE("identical states diverge nowhere") {
        const auto bd = coherence_band_divergence(za, za, g);
        CHECK(bd.inner == 0.0);
        CHECK(bd.mid == 0.0);
        CHECK(bd.outer == 0.0);
        CHECK(diagonal_divergence(za, za, g) == 0.0);
    }

    SUBCASE("symmetric in its arguments, nonzero for different states") {
        const auto wb = pure_state(g, 0.5, 0.0, 1.0);
        const auto zb = wigner_to_z(wb, g);
        const auto ab = coherence_band_divergence(za, zb, g);
        const auto ba = coherence_band_divergence(zb, za, g);
        CHECK(ab.inner == ba.inner);
        CHECK(ab.mid == ba.mid);
        CHECK(ab.outer == ba.outer);
        CHECK(ab.inner > 0.0);
        CHECK(diagonal_divergence(za, zb, g) > 0.0);
    }

    SUBCASE("grid mismatch is an error") {
        const auto g2 = test::default_grid(32);
        const auto zc = wigner_to_z(pure_state(g2, 0.0, 0.0, 1.0), g2);
        CHECK_THROWS_AS(coherence_band_divergence(za, zc, g),
                        std::invalid_argument);
        CHECK_THROWS_AS(diagonal_divergence(za, zc, g), std::invalid_argument);
    }
}
