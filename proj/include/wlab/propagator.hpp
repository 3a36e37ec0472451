#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "wlab/fourier.hpp"
#include "wlab/grid.hpp"
#include "wlab/potential.hpp"
#include "wlab/state.hpp"

namespace wlab {

struct PropagatorConfig {
    Mechanics mechanics = Mechanics::classical;
    double dt = 0.0;
    int n_steps = 0;
    double mass = 1.0;
    Potential potential = Potential::free_particle();
    int record_every = 100;  // snapshot cadence in steps
};

struct Trajectory;

/// Thrown when the evolving state turns non-finite; carries the step index
/// and whatever snapshots were recorded before the abort so partial outputs
/// can still be written.
struct PropagationError : std::runtime_error {
    PropagationError(int step_index, const std::string& what,
                     std::shared_ptr<Trajectory> recorded = nullptr)
        : std::runtime_error(what), step(step_index), partial(std::move(recorded)) {}
    int step;
    std::shared_ptr<Trajectory> partial;
};

/// Strang-split spectral propagator. Both substeps are exact for their
/// generator terms: streaming is the free flow applied as a phase in
/// (k, p), the kick is the pointwise phase e^{−iΦ(x,δx) dt/ħ} in (x, δx) —
/// the Moyal sine kernel and the classical force term are both diagonal
/// there. The only approximation is the splitting itself. The classical /
/// quantum distinction enters exclusively through the Φ array.
///
/// Each substep re-projects F onto real values; the discarded imaginary
/// residue is tracked and stays at rounding level for resolved states.
/// One instance per evolution: instances own their FFT plans and may run on
/// concurrent threads.
class SplitOperatorPropagator {
public:
    SplitOperatorPropagator(const PhaseSpaceGrid& grid,
                            const PropagatorConfig& config);
    /// For driving a caller-supplied kick generator (testing surface).
    SplitOperatorPropagator(const PhaseSpaceGrid& grid, const KickPhase& kick,
                            double dt, double mass);

    void stream_half_step(WignerState& wig);
    void kick_full_step(WignerState& wig);
    void strang_step(WignerState& wig);  // stream ∘ kick ∘ stream

    double max_imag_residue() const { return max_imag_; }
    bool finite() const { return finite_; }
    const PhaseSpaceGrid& grid() const { return grid_; }

private:
    void build_multipliers(const KickPhase& kick, double dt, double mass);
    void copy_out(WignerState& wig, const cplx* buf);

    PhaseSpaceGrid grid_;
    std::vector<cplx> stream_mult_;  // e^{−i k p dt/2m}/nx, [l*np + j]
    std::vector<cplx> kick_mult_;    // e^{−i Φ dt/ħ}/np, [i*np + l]
    fft::BatchPlan along_x_;
    fft::BatchPlan along_p_;
    double max_imag_ = 0.0;
    bool finite_ = true;
};

struct Trajectory {
    std::vector<WignerState> snapshots;
    std::vector<double> times;
    std::vector<int> steps;
    double max_imag_residue = 0.0;
};

/// n_steps Strang steps from `initial`, recording every `record_every` steps
/// (step 0 and the final step always included). Deterministic for a fixed
/// config. Throws PropagationError on non-finite values.
Trajectory evolve(const WignerState& initial, const PhaseSpaceGrid& grid,
                  const PropagatorConfig& config);

// Single-shot forms of the substeps (tests and calibration).
void stream_half_step(WignerState& wig, const PhaseSpaceGrid& grid, double mass,
                      double dt);
void kick_full_step(WignerState& wig, const PhaseSpaceGrid& grid,
                    const KickPhase& kick, double dt);
void strang_step(WignerState& wig, const PhaseSpaceGrid& grid,
                 const PropagatorConfig& config);

/// Closed-form initial condition the characteristics oracle can evaluate
/// anywhere: the Wigner function of a Gaussian packet,
/// F0 = (1/πħ) exp(−(x−x0)²/2σ² − 2σ²(p−p0)²/ħ²).
struct GaussianWignerSpec {
    double x0 = 0.0, p0 = 0.0, sigma_x = 1.0;
};

struct OracleOptions {
    double box_factor = 4.0;   // safety box, in units of the grid half-extent
    double tol = 1e-8;         // substep-halving convergence threshold on F
    int min_substeps = 16;
    int max_doublings = 14;
};

struct CharacteristicsResult {
    WignerState state;
    long escaped = 0;    // preimages that left the safety box (value set to 0)
    int substeps = 0;    // accepted substep count
    double step_change = 0.0;  // max |ΔF| between the last two refinements
};

/// Independent classical reference: F is constant along solutions of
/// dx/dt = p/m, dp/dt = −V'(x), so each node's value is F0 evaluated at the
/// backward-integrated preimage (classic fixed-step RK4, substep refined
/// until halving changes F by less than `tol`). Shares no code path with the
/// spectral propagator.
CharacteristicsResult characteristics_oracle(const GaussianWignerSpec& spec,
                                             const Potential& pot, double mass,
                                             double t,
                                             const PhaseSpaceGrid& grid,
                                             const OracleOptions& opts = {});

/// F0 of the spec sampled on the grid (the oracle at t = 0).
WignerState gaussian_wigner(const GaussianWignerSpec& spec,
                            const PhaseSpaceGrid& grid);

}  // namespace wlab
