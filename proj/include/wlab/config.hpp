#pragma once

#include <string>
#include <vector>

#include "wlab/grid.hpp"
#include "wlab/potential.hpp"
#include "wlab/propagator.hpp"

namespace wlab {

/// Carries every violation found in one parsing pass, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

enum class RunMechanics { classical, quantum, both };
enum class SnapshotFormat { none, csv, binary, both };

struct ExperimentConfig {
    // [grid]
    int nx = 0, np = 0;
    double x_min = 0.0, x_max = 0.0, p_min = 0.0, p_max = 0.0;
    double hbar = 1.0;

    // [potential]
    PotentialFamily family = PotentialFamily::free_particle;
    double linear_g = 0.0;
    double harmonic_m = 0.0, harmonic_omega = 0.0;
    double quartic_lambda = 0.0;
    std::vector<double> poly_coeffs;

    // [initial]
    double x0 = 0.0, p0 = 0.0, sigma_x = 0.0;

    // [run]
    RunMechanics mechanics = RunMechanics::both;
    double dt = 0.0;
    double t_final = 0.0;
    double mass = 1.0;
    int record_every = 100;
    int n_steps = 0;  // derived: round(t_final / dt)

    // [output]
    std::string directory = "out";
    SnapshotFormat snapshot_format = SnapshotFormat::none;
    int snapshot_every = 0;  // steps; 0 = final snapshot only
    bool write_hydro = false;

    std::string preset;  // informational, set when loaded from a preset

    PhaseSpaceGrid make_grid() const;
    Potential make_potential() const;
    PropagatorConfig make_propagator_config(Mechanics mech) const;
};

/// Parses the `[section]` / `key = value` format. Unknown sections or keys
/// are errors (nothing is silently ignored); every violation is reported.
ExperimentConfig parse_config(const std::string& text);

/// The effective configuration rendered back in config syntax, defaults
/// applied, suitable for echoing.
std::string render_config(const ExperimentConfig& config);

std::string to_string(RunMechanics m);
std::string to_string(SnapshotFormat f);

}  // namespace wlab
