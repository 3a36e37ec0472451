#include "wlab/propagator.hpp"

#include <cmath>
#include <sstream>

namespace wlab {

SplitOperatorPropagator::SplitOperatorPropagator(const PhaseSpaceGrid& grid,
                                                 const PropagatorConfig& config)
    : grid_(grid),
      along_x_(grid.nx, grid.np, grid.np, 1),
      along_p_(grid.np, grid.nx, 1, grid.np) {
    const KickPhase kick = config.mechanics == Mechanics::classical
                               ? classical_kick_phase(config.potential, grid)
                               : quantum_kick_phase(config.potential, grid);
    build_multipliers(kick, config.dt, config.mass);
}

SplitOperatorPropagator::SplitOperatorPropagator(const PhaseSpaceGrid& grid,
                                                 const KickPhase& kick,
                                                 double dt, double mass)
    : grid_(grid),
      along_x_(grid.nx, grid.np, grid.np, 1),
      along_p_(grid.np, grid.nx, 1, grid.np) {
    if (kick.phase.size() != grid.size())
        throw std::invalid_argument("kick phase built on a different grid");
    build_multipliers(kick, dt, mass);
}

void SplitOperatorPropagator::build_multipliers(const KickPhase& kick, double dt,
                                                double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (dt < 0.0) throw std::invalid_argument("dt must be non-negative");
    const int nx = grid_.nx, np = grid_.np;

    // Streaming: F(x, p) <- F(x − p dt/2m, p), i.e. multiply the x spectrum
    // by e^{−i k p dt/2m}. The Nyquist row takes the symmetric (cosine)
    // factor so real input maps to real output exactly.
    stream_mult_.resize(grid_.size());
    const double half = 0.5 * dt / mass;
    const double inv_nx = 1.0 / nx;
    for (int l = 0; l < nx; ++l) {
        for (int j = 0; j < np; ++j) {
            const double arg = -grid_.k_values[l] * grid_.p_values[j] * half;
            const cplx m = (l == nx / 2) ? cplx(std::cos(arg), 0.0)
                                         : std::polar(1.0, arg);
            stream_mult_[static_cast<std::size_t>(l) * np + j] = m * inv_nx;
        }
    }

    // Kick: Z(x, δx) <- e^{−i Φ dt/ħ} Z(x, δx). Exact for the force /
    // sine-kernel term; Φ odd in δx pairs conjugate bins, and the δx-Nyquist
    // bin again takes the cosine.
    kick_mult_.resize(grid_.size());
    const double inv_np = 1.0 / np;
    for (int i = 0; i < nx; ++i) {
        for (int l = 0; l < np; ++l) {
            const double arg = -kick.phase[grid_.at(i, l)] * dt / grid_.hbar;
            const cplx m = (l == np / 2) ? cplx(std::cos(arg), 0.0)
                                         : std::polar(1.0, arg);
            kick_mult_[grid_.at(i, l)] = m * inv_np;
        }
    }
}

void SplitOperatorPropagator::copy_out(WignerState& wig, const cplx* buf) {
    double resid = max_imag_;
    bool ok = true;
    for (std::size_t m = 0; m < grid_.size(); ++m) {
        const double re = buf[m].real();
        const double im = buf[m].imag();
        resid = std::max(resid, std::abs(im));
        ok = ok && std::isfinite(re);
        wig.f[m] = re;
    }
    max_imag_ = resid;
    finite_ = finite_ && ok && std::isfinite(resid);
}

void SplitOperatorPropagator::stream_half_step(WignerState& wig) {
    if (wig.f.size() != grid_.size())
        throw std::invalid_argument("state size does not match grid");
    cplx* buf = along_x_.data();
    for (std::size_t m = 0; m < grid_.size(); ++m) buf[m] = wig.f[m];
    along_x_.forward();
    for (std::size_t m = 0; m < grid_.size(); ++m) buf[m] *= stream_mult_[m];
    along_x_.backward();
    copy_out(wig, buf);
}

void SplitOperatorPropagator::kick_full_step(WignerState& wig) {
    if (wig.f.size() != grid_.size())
        throw std::invalid_argument("state size does not match grid");
    cplx* buf = along_p_.data();
    for (std::size_t m = 0; m < grid_.size(); ++m) buf[m] = wig.f[m];
    along_p_.backward();  // p -> δx with the e^{+ipδx/ħ} kernel
    for (std::size_t m = 0; m < grid_.size(); ++m) buf[m] *= kick_mult_[m];
    along_p_.forward();
    copy_out(wig, buf);
}

void SplitOperatorPropagator::strang_step(WignerState& wig) {
    stream_half_step(wig);
    kick_full_step(wig);
    stream_half_step(wig);
}

Trajectory evolve(const WignerState& initial, const PhaseSpaceGrid& grid,
                  const PropagatorConfig& config) {
    if (!(config.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (config.n_steps < 1) throw std::invalid_argument("evolve: n_steps must be >= 1");
    if (config.record_every < 1)
        throw std::invalid_argument("evolve: record_every must be >= 1");

    SplitOperatorPropagator prop(grid, config);
    WignerState state = initial;
    const double t0 = initial.time;

    Trajectory traj;
    auto record = [&](int step) {
        traj.snapshots.push_back(state);
        traj.times.push_back(state.time);
        traj.steps.push_back(step);
    };
    record(0);

    for (int step = 1; step <= config.n_steps; ++step) {
        prop.strang_step(state);
        state.time = t0 + step * config.dt;
        if (!prop.finite()) {
            std::ostringstream msg;
            msg << "non-finite values at step " << step << " (t = " << state.time
                << ")";
            throw PropagationError(step, msg.str(),
                                   std::make_shared<Trajectory>(std::move(traj)));
        }
        if (step % config.record_every == 0 || step == config.n_steps)
            record(step);
    }
    traj.max_imag_residue = prop.max_imag_residue();
    return traj;
}

void stream_half_step(WignerState& wig, const PhaseSpaceGrid& grid, double mass,
                      double dt) {
    KickPhase none{Mechanics::classical, std::vector<double>(grid.size(), 0.0)};
    SplitOperatorPropagator prop(grid, none, dt, mass);
    prop.stream_half_step(wig);
}

void kick_full_step(WignerState& wig, const PhaseSpaceGrid& grid,
                    const KickPhase& kick, double dt) {
    SplitOperatorPropagator prop(grid, kick, dt, 1.0);
    prop.kick_full_step(wig);
}

void strang_step(WignerState& wig, const PhaseSpaceGrid& grid,
                 const PropagatorConfig& config) {
    SplitOperatorPropagator prop(grid, config);
    prop.strang_step(wig);
}

WignerState gaussian_wigner(const GaussianWignerSpec& spec,
                            const PhaseSpaceGrid& grid) {
    WignerState wig;
    wig.f.resize(grid.size());
    const double s2 = spec.sigma_x * spec.sigma_x;
    const double amp = 1.0 / (M_PI * grid.hbar);
    const double cp = 2.0 * s2 / (grid.hbar * grid.hbar);
    for (int i = 0; i < grid.nx; ++i) {
        const double ex = (grid.x_values[i] - spec.x0);
        const double gx = std::exp(-ex * ex / (2.0 * s2));
        for (int j = 0; j < grid.np; ++j) {
            const double ep = grid.p_values[j] - spec.p0;
            wig.f[grid.at(i, j)] = amp * gx * std::exp(-cp * ep * ep);
        }
    }
    return wig;
}

namespace {

struct BackwardMap {
    const Potential& pot;
    double mass;
    double t;
    int substeps;
    double cx, cp, bx, bp;  // safety box center and half-widths

    // RK4 in reversed time from (x, p) at t back to 0; false if the
    // trajectory leaves the safety box.
    bool preimage(double x, double p, double& x0, double& p0) const {
        const double h = -t / substeps;
        for (int s = 0; s < substeps; ++s) {
            const double k1x = p / mass;
            const double k1p = -pot.derivative(x);
            const double x2 = x + 0.5 * h * k1x, p2 = p + 0.5 * h * k1p;
            const double k2x = p2 / mass;
            const double k2p = -pot.derivative(x2);
            const double x3 = x + 0.5 * h * k2x, p3 = p + 0.5 * h * k2p;
            const double k3x = p3 / mass;
            const double k3p = -pot.derivative(x3);
            const double x4 = x + h * k3x, p4 = p + h * k3p;
            const double k4x = p4 / mass;
            const double k4p = -pot.derivative(x4);
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            if (std::abs(x - cx) > bx || std::abs(p - cp) > bp) return false;
        }
        x0 = x;
        p0 = p;
        return true;
    }
};

}  // namespace

CharacteristicsResult characteristics_oracle(const GaussianWignerSpec& spec,
                                             const Potential& pot, double mass,
                                             double t, const PhaseSpaceGrid& grid,
                                             const OracleOptions& opts) {
    if (!(mass > 0.0)) throw std::invalid_argument("oracle: mass must be positive");
    if (t < 0.0) throw std::invalid_argument("oracle: t must be non-negative");

    const double s2 = spec.sigma_x * spec.sigma_x;
    const double amp = 1.0 / (M_PI * grid.hbar);
    const double cp2 = 2.0 * s2 / (grid.hbar * grid.hbar);
    auto f0 = [&](double x, double p) {
        const double ex = x - spec.x0, ep = p - spec.p0;
        return amp * std::exp(-ex * ex / (2.0 * s2) - cp2 * ep * ep);
    };

    CharacteristicsResult res;
    res.state.time = t;
    res.state.f.resize(grid.size());
    if (t == 0.0) {
        res.state = gaussian_wigner(spec, grid);
        res.state.time = 0.0;
        res.substeps = 0;
        return res;
    }

    BackwardMap map{pot,
                    mass,
                    t,
                    opts.min_substeps,
                    0.5 * (grid.x_min + grid.x_max),
                    0.5 * (grid.p_min + grid.p_max),
                    opts.box_factor * 0.5 * grid.x_length(),
                    opts.box_factor * 0.5 * grid.p_length()};

    auto solve = [&](int substeps, std::vector<double>& out, long& escaped) {
        map.substeps = substeps;
        escaped = 0;
        for (int i = 0; i < grid.nx; ++i) {
            for (int j = 0; j < grid.np; ++j) {
                double x0, p0;
                if (map.preimage(grid.x_values[i], grid.p_values[j], x0, p0)) {
                    out[grid.at(i, j)] = f0(x0, p0);
                } else {
                    out[grid.at(i, j)] = 0.0;
                    ++escaped;
                }
            }
        }
    };

    std::vector<double> coarse(grid.size()), fine(grid.size());
    long escaped = 0;
    int substeps = opts.min_substeps;
    solve(substeps, coarse, escaped);
    double change = 0.0;
    for (int d = 0; d < opts.max_doublings; ++d) {
        solve(2 * substeps, fine, escaped);
        change = 0.0;
        for (std::size_t m = 0; m < grid.size(); ++m)
            change = std::max(change, std::abs(fine[m] - coarse[m]));
        substeps *= 2;
        coarse.swap(fine);
        if (change < opts.tol) break;
    }

    res.state.f = coarse;
    res.escaped = escaped;
    res.substeps = substeps;
    res.step_change = change;
    return res;
}

}  // namespace wlab
