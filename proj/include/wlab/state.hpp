#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "wlab/fourier.hpp"
#include "wlab/grid.hpp"

namespace wlab {

using cplx = std::complex<double>;

/// Wavefunction sampled on the x grid, Σ|ψ|² dx = 1.
struct PureState {
    std::vector<cplx> psi;
    // Parameters of origin when constructed as a Gaussian packet.
    double x0 = 0.0, p0 = 0.0, sigma_x = 0.0;
    bool is_gaussian = false;
};

/// Characteristic function / rotated density matrix Z(x, δx),
/// Z(x, δx) = <x+δx/2| ρ |x−δx/2>. Stored p-fastest with the δx axis in
/// transform order, matching PhaseSpaceGrid::dxoff_values. Realness of the
/// Wigner function appears here as Z(x, −δx) = conj Z(x, δx).
struct ZMatrix {
    std::vector<cplx> z;
    double time = 0.0;
};

/// Real phase-space density F(x, p); the evolving object for both mechanics.
/// May go negative in either mechanics.
struct WignerState {
    std::vector<double> f;
    double time = 0.0;
};

/// ψ(x) = (2πσ²)^{-1/4} exp(−(x−x0)²/4σ² + i p0 x/ħ), renormalized on the
/// grid. Rejects placements with less than 4σ margin to the x bounds or
/// |p0| + 4σ_p beyond the p bounds (σ_p = ħ/2σ): such states alias.
PureState gaussian_wavepacket(const PhaseSpaceGrid& grid, double x0, double p0,
                              double sigma_x);

/// Z(x, δx) = ψ(x+δx/2) conj ψ(x−δx/2); midpoints by band-limited
/// translation of ψ, no polynomial interpolation.
ZMatrix pure_to_z(const PureState& psi, const PhaseSpaceGrid& grid);

/// F(x, p) = (1/2πħ) Σ_l Z(x, δx_l) e^{−i p δx_l/ħ} dδx. Requires the
/// Hermiticity image to hold to 1e−6 (violations signal upstream corruption);
/// the imaginary residue of the output is returned through `imag_residue`
/// and discarded.
WignerState z_to_wigner(const ZMatrix& zmat, const PhaseSpaceGrid& grid,
                        double* imag_residue = nullptr);

/// Z(x, δx_l) = Σ_j F(x, p_j) e^{+i p_j δx_l/ħ} dp; exact discrete inverse
/// of z_to_wigner.
ZMatrix wigner_to_z(const WignerState& wig, const PhaseSpaceGrid& grid);

/// max |Z(x, −δx) − conj Z(x, δx)| over the grid.
double hermiticity_residual(const ZMatrix& zmat, const PhaseSpaceGrid& grid);

/// Position-basis density matrix ρ(y_i, y_j) = Z((y_i+y_j)/2, y_i−y_j) on the
/// x grid, built by band-limited interpolation of Z. Entries whose offset
/// falls outside the representable δx window are zeroed and counted.
struct DensityMatrix {
    Eigen::MatrixXcd rho;  // continuum-normalized: trace(rho) * dx = 1
    long truncated = 0;
};

DensityMatrix assemble_density_matrix(const ZMatrix& zmat,
                                      const PhaseSpaceGrid& grid);

/// Rescales to unit total integral; returns the factor applied.
/// Throws if the total mass is non-positive or not finite.
double normalize(WignerState& wig, const PhaseSpaceGrid& grid);
double normalize(PureState& psi, const PhaseSpaceGrid& grid);

/// First and second phase-space moments of F (Riemann sums).
struct PhaseSpaceMoments {
    double norm = 0.0;
    double mean_x = 0.0, mean_p = 0.0;
    double var_x = 0.0, var_p = 0.0;
};

PhaseSpaceMoments phase_space_moments(const WignerState& wig,
                                      const PhaseSpaceGrid& grid);

}  // namespace wlab
