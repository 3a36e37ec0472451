#pragma once

#include <cstdint>
#include <vector>

#include "wlab/grid.hpp"
#include "wlab/potential.hpp"
#include "wlab/propagator.hpp"
#include "wlab/state.hpp"

namespace wlab {

/// Per-x moment fields of F and the derived potentials. pbar and sigma2 are
/// defined on the mask {n > n_floor} and zero elsewhere; n itself is never
/// clipped (it may dip negative through numerics for classically evolved
/// states — tracked, not enforced).
struct HydroFields {
    std::vector<double> n;       // ∫ F dp
    std::vector<double> pbar;    // (1/n) ∫ p F dp, masked
    std::vector<double> sigma2;  // (1/n) ∫ (p − p̄)² F dp, masked
    std::vector<double> W;       // velocity potential, W_x = p̄
    std::vector<double> I;       // pressure potential, I_x = (nσ²)_x / nm
    std::vector<double> Q;       // quantum potential (pure states only)
    std::vector<std::uint8_t> mask;
    double n_floor = 0.0;  // absolute floor actually applied

    // Second moment ∫ (p − p̄_floored)² F dp on the full grid, with a floored
    // division so it stays smooth across the mask edge; this is what the
    // spectral derivative in compute_I differentiates.
    std::vector<double> m2_smooth;
    std::vector<double> m1;  // ∫ p F dp, full grid (the flux n p̄)
};

/// Riemann-sum p-quadratures of F. n_floor_rel scales max(n).
HydroFields moments(const WignerState& wig, const PhaseSpaceGrid& grid,
                    double n_floor_rel = 1e-8);

/// Antiderivative of p̄ on the mask's spanning interval (spectral, with
/// linear bridging across mask gaps), zeroed at the density maximum.
/// Throws on an empty mask.
void compute_W(HydroFields& fields, const PhaseSpaceGrid& grid);

/// I from I_x = (nσ²)_x/(nm), integrated like W; the additive constant is
/// fixed so that ∫ n σ²/(2m) dx = ∫ n I dx holds exactly in the discrete
/// mask quadrature. Throws if the mask is empty or fragments into more than
/// 8 islands.
void compute_I(HydroFields& fields, const PhaseSpaceGrid& grid, double mass);

/// Q = −(ħ²/2m) R_xx / R on the mask {R² > n_floor}, zero off it.
/// R is the modulus of the wavefunction; for an evolved pure state use
/// R = sqrt(n).
std::vector<double> compute_Q_from_modulus(const std::vector<double>& modulus,
                                           const PhaseSpaceGrid& grid,
                                           double mass, double n_floor_abs);
std::vector<double> compute_Q(const PureState& psi, const PhaseSpaceGrid& grid,
                              double mass, double n_floor_rel = 1e-8);

/// Relative L2 residual of n_t = −(n p̄ / m)_x at snapshot t_index, needing
/// the two neighbouring snapshots for the time derivative.
double continuity_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                           double mass, int t_index, double n_floor_rel = 1e-8);

/// Relative L2 residual of W_t = −[(W_x)²/2m + V + I] at snapshot t_index,
/// after removing the spatially constant gauge offset (W's zero point is
/// re-anchored at every snapshot, so only the gradient content is physical).
double motion_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                       const Potential& pot, double mass, int t_index,
                       double n_floor_rel = 1e-8);

}  // namespace wlab
