#include <doctest.h>

#include <cmath>

#include "test_common.hpp"
#include "wlab/hydro.hpp"

using namespace wlab;

namespace {

// Correlated Gaussian F ∝ exp(−x²/2a²) exp(−(p − p0 − αx)²/2b²), which has
// p̄(x) = p0 + αx exactly.
WignerState sheared_gaussian(const PhaseSpaceGrid& g, double a, double b,
                             double p0, double alpha) {
    WignerState w;
    w.f.resize(g.size());
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x_values[i];
        const double gx = std::exp(-x * x / (2 * a * a));
        for (int j = 0; j < g.np; ++j) {
            const double dp = g.p_values[j] - p0 - alpha * x;
            w.f[g.at(i, j)] = gx * std::exp(-dp * dp / (2 * b * b));
        }
    }
    normalize(w, g);
    return w;
}

WignerState ground_state_wigner(const PhaseSpaceGrid& g, double mass,
                                double omega) {
    const double sigma = std::sqrt(0.5 * g.hbar / (mass * omega));
    auto w = gaussian_wigner({0.0, 0.0, sigma}, g);
    normalize(w, g);
    return w;
}

Trajectory constant_trajectory(const WignerState& w, double spacing) {
    Trajectory traj;
    for (int k = 0; k < 3; ++k) {
        traj.snapshots.push_back(w);
        traj.times.push_back(k * spacing);
        traj.steps.push_back(k);
    }
    return traj;
}

}  // namespace

TEST_CASE("hydro: moments of a boosted Gaussian") {
    const auto g = test::default_grid();
    auto w = gaussian_wigner({0.0, 2.0, 1.0}, g);
    normalize(w, g);
    const auto h = moments(w, g);

    double n_total = 0.0;
    for (double v : h.n) n_total += v;
    CHECK(std::abs(n_total * g.dx - 1.0) < 1e-8);

    for (int i = 0; i < g.nx; ++i) {
        if (!h.mask[i]) continue;
        CHECK(std::abs(h.pbar[i] - 2.0) < 1e-8);
        CHECK(std::abs(h.sigma2[i] - 0.25) < 1e-6);  // ħ²/4σ²
    }
}

TEST_CASE("hydro: W is the antiderivative of pbar, zeroed at the peak") {
    const auto g = test::default_grid();

    SUBCASE("uniform pbar gives a linear W") {
        const double x0 = 0.625;  // on-grid so the density peak is exactly there
        auto w = gaussian_wigner({x0, 1.5, 1.0}, g);
        normalize(w, g);
        auto h = moments(w, g);
        compute_W(h, g);
        for (int i = 0; i < g.nx; ++i) {
            if (!h.mask[i]) continue;
            CHECK(std::abs(h.W[i] - 1.5 * (g.x_values[i] - x0)) < 1e-6);
        }
    }

    SUBCASE("linear pbar: quadratic W and exact derivative round trip") {
        auto w = sheared_gaussian(g, 1.2, 0.9, 0.7, 0.4);
        auto h = moments(w, g);
        compute_W(h, g);
        for (int i = 1; i < g.nx - 1; ++i) {
            if (!h.mask[i - 1] || !h.mask[i] || !h.mask[i + 1]) continue;
            const double x = g.x_values[i];
            const double analytic = 0.7 * x + 0.2 * x * x;  // up to a constant
            const double analytic0 = 0.0;                   // peak at x = 0
            CHECK(std::abs((h.W[i] - analytic) - analytic0) < 1e-5);
            const double dW = (h.W[i + 1] - h.W[i - 1]) / (2 * g.dx);
            CHECK(std::abs(dW - h.pbar[i]) < 1e-6);
        }
    }

    SUBCASE("empty mask is an error") {
        HydroFields h;
        h.n.assign(g.nx, 0.0);
        h.pbar.assign(g.nx, 0.0);
        h.mask.assign(g.nx, 0);
        CHECK_THROWS_AS(compute_W(h, g), std::runtime_error);
    }
}

TEST_CASE("hydro: I matches the quantum potential for a pure Gaussian") {
    const auto g = test::default_grid();
    const double mass = 1.3, sigma = 0.9;
    const auto psi = gaussian_wavepacket(g, 0.0, 0.0, sigma);
    auto w = z_to_wigner(pure_to_z(psi, g), g);
    normalize(w, g);
    auto h = moments(w, g);
    compute_I(h, g, mass);
    const auto q = compute_Q(psi, g, mass);

    double max_q = 0.0, worst = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        if (!h.mask[i]) continue;
        max_q = std::max(max_q, std::abs(q[i]));
        worst = std::max(worst, std::abs(h.I[i] - q[i]));
    }
    CHECK(worst < 1e-3 * max_q);

    // The normalization condition holds exactly in the discrete quadrature.
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        if (!h.mask[i]) continue;
        lhs += h.n[i] * h.sigma2[i] / (2.0 * mass);
        rhs += h.n[i] * h.I[i];
    }
    CHECK(std::abs(lhs - rhs) * g.dx < 1e-12);
}

TEST_CASE("hydro: uniform density and variance give the constant I") {
    const auto g = test::default_grid(64);
    const double s2 = 0.49, mass = 2.0;
    WignerState w;
    w.f.resize(g.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.np; ++j) {
            const double p = g.p_values[j];
            w.f[g.at(i, j)] = std::exp(-p * p / (2 * s2));
        }
    normalize(w, g);
    auto h = moments(w, g);
    compute_I(h, g, mass);
    for (int i = 0; i < g.nx; ++i) {
        REQUIRE(h.mask[i]);
        CHECK(std::abs(h.sigma2[i] - s2) < 1e-9);
        CHECK(std::abs(h.I[i] - h.sigma2[i] / (2 * mass)) < 1e-12);
    }
}

TEST_CASE("hydro: quantum potential of a Gaussian matches the closed form") {
    const auto g = test::default_grid();
    const double sigma = 0.8, mass = 1.7, x0 = 0.4;
    const auto psi = gaussian_wavepacket(g, x0, 0.0, sigma);
    const auto q = compute_Q(psi, g, mass);

    const double s2 = sigma * sigma;
    const auto h = moments(z_to_wigner(pure_to_z(psi, g), g), g);
    for (int i = 0; i < g.nx; ++i) {
        if (!h.mask[i]) continue;
        const double dx0 = g.x_values[i] - x0;
        const double expected =
            -(g.hbar * g.hbar / (2 * mass)) *
            (dx0 * dx0 / (4 * s2 * s2) - 1.0 / (2 * s2));
        CHECK(std::abs(q[i] - expected) < 1e-8);
    }
    // Peak value ħ²/(4mσ²) at an on-grid center
    const auto centered = gaussian_wavepacket(g, 0.0, 0.0, sigma);
    const auto qc = compute_Q(centered, g, mass);
    CHECK(qc[128] == doctest::Approx(g.hbar * g.hbar / (4 * mass * s2))
                         .epsilon(1e-8));

    // A plane-wave phase factor does not change Q.
    const auto boosted = gaussian_wavepacket(g, x0, 1.8, sigma);
    const auto q2 = compute_Q(boosted, g, mass);
    CHECK(test::max_abs_diff(q, q2) < 1e-10);
}

TEST_CASE("hydro: Q requires a modulus of the right size") {
    const auto g = test::default_grid(64);
    CHECK_THROWS_AS(compute_Q_from_modulus(std::vector<double>(7, 1.0), g, 1.0,
                                           1e-8),
                    std::invalid_argument);
}

TEST_CASE("hydro: continuity residual vanishes for a stationary state") {
    const auto g = test::default_grid();
    const auto w = ground_state_wigner(g, 1.0, 1.0);
    const auto traj = constant_trajectory(w, 0.1);
    CHECK(continuity_residual(traj, g, 1.0, 1) < 1e-6);
}

TEST_CASE("hydro: continuity residual on a spreading packet converges in dt") {
    const auto g = test::default_grid(128);
    WignerState w = gaussian_wigner({0.0, 0.0, 1.0}, g);
    normalize(w, g);
    PropagatorConfig cfg;
    cfg.mechanics = Mechanics::quantum;
    cfg.potential = Potential::free_particle();
    cfg.mass = 1.0;
    cfg.record_every = 50;

    auto residual_at = [&](double dt) {
        PropagatorConfig c = cfg;
        c.dt = dt;
        c.n_steps = 400;
        const auto traj = evolve(w, g, c);
        return continuity_residual(traj, g, 1.0, 4);
    };
    const double coarse = residual_at(1e-3);  // snapshot spacing 0.05
    const double fine = residual_at(5e-4);
    CHECK(coarse < 1e-3);
    // Centered time difference is second order in the snapshot spacing.
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("hydro: motion residual for the stationary ground state") {
    const auto g = test::default_grid();
    const auto w = ground_state_wigner(g, 1.0, 1.0);
    const auto traj = constant_trajectory(w, 0.1);
    const double r =
        motion_residual(traj, g, Potential::harmonic(1.0, 1.0), 1.0, 1);
    CHECK(r < 1e-3);
}

TEST_CASE("hydro: motion residual for a spreading free packet") {
    const auto g = test::default_grid(128);
    WignerState w = gaussian_wigner({0.0, 0.0, 1.0}, g);
    normalize(w, g);
    PropagatorConfig cfg;
    cfg.mechanics = Mechanics::quantum;
    cfg.potential = Potential::free_particle();
    cfg.mass = 1.0;
    cfg.dt = 1e-3;
    cfg.n_steps = 100;
    cfg.record_every = 25;
    const auto traj = evolve(w, g, cfg);
    const double r =
        motion_residual(traj, g, Potential::free_particle(), 1.0, 2);
    CHECK(r < 1e-3);
}

TEST_CASE("hydro: fragmented masks are rejected") {
    const auto g = build_phase_space_grid(256, 64, -16, 16, -8, 8, 1.0);
    WignerState w;
    w.f.assign(g.size(), 0.0);
    for (int bump = 0; bump < 10; ++bump) {
        const double cx = -13.5 + 3.0 * bump;
        for (int i = 0; i < g.nx; ++i) {
            const double dx0 = g.x_values[i] - cx;
            const double gx = std::exp(-dx0 * dx0 / (2 * 0.15 * 0.15));
            for (int j = 0; j < g.np; ++j) {
                const double p = g.p_values[j];
                w.f[g.at(i, j)] += gx * std::exp(-p * p);
            }
        }
    }
    normalize(w, g);
    auto h = moments(w, g);
    CHECK_THROWS_WITH_AS(compute_I(h, g, 1.0),
                         doctest::Contains("fragmented"), std::runtime_error);
}
