#include "wlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "wlab/diagnostics.hpp"
#include "wlab/hydro.hpp"
#include "wlab/io.hpp"
#include "wlab/potential.hpp"
#include "wlab/propagator.hpp"
#include "wlab/state.hpp"

namespace wlab {

namespace fs = std::filesystem;

namespace {

std::string step_tag(int step) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08d", step);
    return buf;
}

struct Leg {
    Mechanics mech = Mechanics::classical;
    std::optional<Trajectory> traj;
    std::optional<PropagationError> error;
};

void run_leg(Leg& leg, const WignerState& initial, const PhaseSpaceGrid& grid,
             const ExperimentConfig& config) {
    try {
        leg.traj = evolve(initial, grid, config.make_propagator_config(leg.mech));
    } catch (const PropagationError& e) {
        leg.error = e;
        if (e.partial) leg.traj = *e.partial;
    }
}

// Diagnostics rows for one trajectory; the divergence columns are filled in
// afterwards when a counterpart exists.
std::vector<DivergenceReport> leg_reports(const Trajectory& traj,
                                          std::vector<ZMatrix>& zs,
                                          const PhaseSpaceGrid& grid,
                                          const ExperimentConfig& config) {
    const Potential pot = config.make_potential();
    std::vector<DivergenceReport> rows(traj.snapshots.size());
    zs.resize(traj.snapshots.size());
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const WignerState& snap = traj.snapshots[k];
        DivergenceReport& r = rows[k];
        r.t = traj.times[k];
        double total = 0.0;
        for (double v : snap.f) total += v;
        r.norm = total * grid.cell();
        r.energy = energy(snap, grid, pot, config.mass);
        r.purity = purity(snap, grid);
        zs[k] = wigner_to_z(snap, grid);
        const MinEigenvalue me = min_eigenvalue(zs[k], grid);
        r.min_eig = me.value;
        r.min_eig_low_confidence = me.low_confidence;
    }
    return rows;
}

void write_snapshots(const Trajectory& traj, const PhaseSpaceGrid& grid,
                     const ExperimentConfig& config, const fs::path& dir,
                     const std::string& mech_name) {
    if (config.snapshot_format == SnapshotFormat::none) return;
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const int step = traj.steps[k];
        const bool is_final = (k + 1 == traj.snapshots.size());
        const bool on_cadence =
            config.snapshot_every > 0 && step % config.snapshot_every == 0;
        if (!is_final && !on_cadence) continue;
        const std::string base = "snapshot_" + mech_name + "_" + step_tag(step);
        if (config.snapshot_format == SnapshotFormat::csv ||
            config.snapshot_format == SnapshotFormat::both)
            write_snapshot_csv(traj.snapshots[k], grid, dir / (base + ".csv"));
        if (config.snapshot_format == SnapshotFormat::binary ||
            config.snapshot_format == SnapshotFormat::both)
            write_snapshot_binary(traj.snapshots[k], grid, dir / (base + ".bin"));
    }
}

void write_hydro_series(const Trajectory& traj, const PhaseSpaceGrid& grid,
                        const ExperimentConfig& config, const fs::path& dir,
                        const std::string& mech_name, bool pure_state) {
    if (!config.write_hydro) return;
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const int step = traj.steps[k];
        const bool is_final = (k + 1 == traj.snapshots.size());
        const bool on_cadence =
            config.snapshot_every > 0 && step % config.snapshot_every == 0;
        if (!is_final && !on_cadence) continue;
        HydroFields h = moments(traj.snapshots[k], grid);
        compute_W(h, grid);
        compute_I(h, grid, config.mass);
        std::vector<double> q;
        if (pure_state) {
            // Quantum evolution preserves purity, so R = sqrt(n) is the
            // wavefunction modulus and Q is defined along the whole run.
            std::vector<double> r(grid.nx);
            for (int i = 0; i < grid.nx; ++i)
                r[i] = std::sqrt(std::max(h.n[i], 0.0));
            q = compute_Q_from_modulus(r, grid, config.mass, h.n_floor);
        }
        write_hydro_csv(h, q, grid,
                        dir / ("hydro_" + mech_name + "_" + step_tag(step) + ".csv"));
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
    log << "# effective configuration\n" << render_config(config) << std::flush;

    const PhaseSpaceGrid grid = config.make_grid();
    PureState psi = gaussian_wavepacket(grid, config.x0, config.p0, config.sigma_x);
    const ZMatrix z0 = pure_to_z(psi, grid);
    WignerState f0 = z_to_wigner(z0, grid);
    normalize(f0, grid);

    std::vector<Leg> legs;
    if (config.mechanics == RunMechanics::classical ||
        config.mechanics == RunMechanics::both)
        legs.push_back({Mechanics::classical, {}, {}});
    if (config.mechanics == RunMechanics::quantum ||
        config.mechanics == RunMechanics::both)
        legs.push_back({Mechanics::quantum, {}, {}});

    if (legs.size() == 2) {
        std::thread t0([&] { run_leg(legs[0], f0, grid, config); });
        std::thread t1([&] { run_leg(legs[1], f0, grid, config); });
        t0.join();
        t1.join();
    } else {
        run_leg(legs[0], f0, grid, config);
    }

    const fs::path dir(config.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        log << "cannot create output directory '" << dir.string()
            << "': " << ec.message() << "\n";
        return kExitConfigError;
    }

    // Diagnostics per leg (concurrently for paired runs), then the
    // cross-mechanics divergence columns.
    std::vector<std::vector<DivergenceReport>> rows(legs.size());
    std::vector<std::vector<ZMatrix>> zs(legs.size());
    {
        auto work = [&](std::size_t idx) {
            if (legs[idx].traj)
                rows[idx] = leg_reports(*legs[idx].traj, zs[idx], grid, config);
        };
        if (legs.size() == 2) {
            std::thread t0([&] { work(0); });
            std::thread t1([&] { work(1); });
            t0.join();
            t1.join();
        } else {
            work(0);
        }
    }

    if (legs.size() == 2) {
        const std::size_t common = std::min(rows[0].size(), rows[1].size());
        for (std::size_t k = 0; k < common; ++k) {
            const BandDivergence bd =
                coherence_band_divergence(zs[0][k], zs[1][k], grid);
            const double dd = diagonal_divergence(zs[0][k], zs[1][k], grid);
            for (auto* leg_rows : {&rows[0], &rows[1]}) {
                (*leg_rows)[k].band_inner = bd.inner;
                (*leg_rows)[k].band_mid = bd.mid;
                (*leg_rows)[k].band_outer = bd.outer;
                (*leg_rows)[k].diag_dist = dd;
            }
        }
    }

    for (std::size_t idx = 0; idx < legs.size(); ++idx) {
        const std::string mech_name = to_string(legs[idx].mech);
        const fs::path series =
            legs.size() == 2 ? dir / ("diagnostics_" + mech_name + ".csv")
                             : dir / "diagnostics.csv";
        write_series(rows[idx], series);
        if (legs[idx].traj) {
            write_snapshots(*legs[idx].traj, grid, config, dir, mech_name);
            write_hydro_series(*legs[idx].traj, grid, config, dir, mech_name,
                               legs[idx].mech == Mechanics::quantum);
        }
    }

    for (const Leg& leg : legs) {
        if (leg.error) {
            std::ofstream err(dir / "error.log");
            err << to_string(leg.mech) << " evolution aborted at step "
                << leg.error->step << ": " << leg.error->what() << "\n";
            log << "ABORT: " << to_string(leg.mech) << " evolution failed at step "
                << leg.error->step << " (" << leg.error->what()
                << "); partial outputs kept in " << dir.string() << "\n";
            return kExitRuntimeAbort;
        }
    }

    log << "# wrote outputs to " << dir.string() << "\n";
    return kExitOk;
}

}  // namespace wlab
