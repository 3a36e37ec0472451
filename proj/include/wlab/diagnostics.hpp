#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "wlab/grid.hpp"
#include "wlab/potential.hpp"
#include "wlab/state.hpp"

namespace wlab {

/// Tr ρ² = 2πħ ∫∫ F² dx dp (Weyl-calculus identity); 1 for pure states.
double purity(const WignerState& wig, const PhaseSpaceGrid& grid);

/// ⟨p²/2m + V⟩ under F.
double energy(const WignerState& wig, const PhaseSpaceGrid& grid,
              const Potential& pot, double mass);

/// Tr ρ² from an assembled density matrix (cross-check for `purity`).
double dense_purity(const DensityMatrix& dm, const PhaseSpaceGrid& grid);

struct MinEigenvalue {
    double value = 0.0;
    /// Set when more than 1% of the density-matrix entries fell outside the
    /// representable δx window during assembly.
    bool low_confidence = false;
};

/// Smallest eigenvalue of the symmetrized ρ dx (a valid state has spectrum
/// in [0, 1]).
MinEigenvalue min_eigenvalue(const ZMatrix& zmat, const PhaseSpaceGrid& grid);

/// Randomized lower-bound probe: min over trials of the Rayleigh quotient
/// ⟨φ|ρ|φ⟩ after shifted power iterations pull random start vectors toward
/// the bottom of the spectrum. Every returned quotient is >= λ_min, so a
/// negative probe certifies a negative eigenvalue independently of the
/// eigensolver.
double random_probe_min_eig(const Eigen::MatrixXcd& rho_dx, int n_probes,
                            int n_iters, std::uint64_t seed);

struct BandDivergence {
    double inner = 0.0;  // |δx| in [0, L/8)
    double mid = 0.0;    // [L/8, L/4)
    double outer = 0.0;  // [L/4, L/2)
};

/// Per-band max |Z_cl − Z_q|; L is the full δx range of the grid.
BandDivergence coherence_band_divergence(const ZMatrix& z_cl, const ZMatrix& z_q,
                                         const PhaseSpaceGrid& grid);

/// max_x |Z_cl(x, 0) − Z_q(x, 0)|.
double diagonal_divergence(const ZMatrix& z_cl, const ZMatrix& z_q,
                           const PhaseSpaceGrid& grid);

/// One row of the divergence time series. For paired (classical vs quantum)
/// runs the band and diagonal distances compare the two; for single runs
/// they are zero.
struct DivergenceReport {
    double t = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    double purity = 0.0;
    double min_eig = 0.0;
    double diag_dist = 0.0;
    double band_inner = 0.0;
    double band_mid = 0.0;
    double band_outer = 0.0;
    bool min_eig_low_confidence = false;
};

}  // namespace wlab
