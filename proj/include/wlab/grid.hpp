#pragma once

#include <cstddef>
#include <vector>

namespace wlab {

/// Discretized (x, p) rectangle with its two Fourier-conjugate pairings,
/// x <-> k for streaming and p <-> δx for kicks. Both directions are
/// periodic with the endpoint excluded; sizes are powers of two. Immutable
/// after construction and freely shareable across threads.
///
/// Conjugacy: dp * dxoff_spacing * np = 2π ħ exactly, so the p <-> δx
/// transforms are mutual inverses on the grid. The δx window spans
/// ±π ħ / dp; coherences beyond it are not representable.
struct PhaseSpaceGrid {
    int nx = 0;
    int np = 0;
    double x_min = 0.0, x_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
    double dx = 0.0, dp = 0.0;
    double hbar = 1.0;

    std::vector<double> x_values;      // x_min + i dx
    std::vector<double> p_values;      // p_min + j dp
    std::vector<double> k_values;      // wavenumbers conjugate to x, zero first
    std::vector<double> dxoff_values;  // δx offsets conjugate to p, zero first

    std::size_t size() const { return static_cast<std::size_t>(nx) * np; }

    /// Flat index into p-fastest arrays: (x index i, p or δx index j).
    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(i) * np + j;
    }

    double x_length() const { return x_max - x_min; }
    double p_length() const { return p_max - p_min; }
    double dxoff_spacing() const;        // δx grid spacing
    double dxoff_window() const;         // half-width π ħ / dp of the δx range
    double cell() const { return dx * dp; }
};

/// Validates and builds the grid. Rejects non-power-of-two sizes (< 8),
/// inverted bounds and non-positive ħ, reporting every violation at once.
PhaseSpaceGrid build_phase_space_grid(int nx, int np, double x_min, double x_max,
                                      double p_min, double p_max,
                                      double hbar = 1.0);

/// The two frequency axes in standard transform order (zero first).
std::pair<const std::vector<double>&, const std::vector<double>&> frequency_grid(
    const PhaseSpaceGrid& grid);

}  // namespace wlab
