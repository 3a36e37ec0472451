#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wlab/diagnostics.hpp"
#include "wlab/grid.hpp"
#include "wlab/hydro.hpp"
#include "wlab/state.hpp"

namespace wlab {

/// Diagnostics CSV, one row per record time, pinned header
/// t,norm,energy,purity,min_eig,diag_dist,band_inner,band_mid,band_outer
/// and 17 significant digits throughout (lossless double round-trip).
void write_series(const std::vector<DivergenceReport>& reports,
                  const std::filesystem::path& path);

/// Snapshot as x,p,F triples, same digit rule.
void write_snapshot_csv(const WignerState& wig, const PhaseSpaceGrid& grid,
                        const std::filesystem::path& path);

/// Raw snapshot: 32-byte header (magic "WLAB0001", nx and np as 8-byte
/// little-endian unsigned integers, 8 reserved zero bytes) followed by
/// nx*np little-endian IEEE doubles, row-major with p fastest.
void write_snapshot_binary(const WignerState& wig, const PhaseSpaceGrid& grid,
                           const std::filesystem::path& path);

struct BinarySnapshot {
    std::uint64_t nx = 0, np = 0;
    std::vector<double> f;
};

BinarySnapshot read_snapshot_binary(const std::filesystem::path& path);

/// Per-snapshot hydrodynamic fields; the q column holds the quantum
/// potential when a pure-state modulus is available and nan otherwise.
void write_hydro_csv(const HydroFields& fields, const std::vector<double>& q,
                     const PhaseSpaceGrid& grid,
                     const std::filesystem::path& path);

std::string format17(double v);

}  // namespace wlab
