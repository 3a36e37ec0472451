#pragma once

#include <iosfwd>
#include <string>

#include "wlab/config.hpp"

namespace wlab {

/// Exit statuses of run_experiment / the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeAbort = 2;

/// Runs the configured experiment end to end: builds the initial state,
/// evolves it under the requested mechanics (classical and quantum run
/// concurrently for mechanics = both), computes the divergence time series
/// and writes all outputs under the configured directory. Returns an exit
/// status; on a mid-run abort the partial outputs are kept and an error.log
/// records the failing step.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace wlab
