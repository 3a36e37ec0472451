#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "wlab/grid.hpp"

namespace wlab {

enum class PotentialFamily { free_particle, linear, harmonic, quartic, polynomial };

enum class Mechanics { classical, quantum };

std::string to_string(PotentialFamily f);
std::string to_string(Mechanics m);

/// Polynomial potential family with exact closed-form value and derivative.
/// Every supported family reduces to coefficients of x^k, k <= 8; evaluation
/// is Horner's rule throughout, so there is never a numerical-differentiation
/// or interpolation error source.
class Potential {
public:
    static constexpr int max_degree = 8;
    using Coeffs = std::array<double, max_degree + 1>;

    static Potential free_particle();
    static Potential linear(double slope);                      // V = g x
    static Potential harmonic(double mass, double omega);       // V = m ω² x²/2
    /// V = λ x⁴ (+ m ω² x²/2 when a harmonic part is given).
    static Potential quartic(double lambda, double mass = 0.0, double omega = 0.0);
    static Potential polynomial(std::span<const double> coeffs);

    double value(double x) const;
    double derivative(double x) const;

    /// Classical kick generator δx · V'(x).
    double classical_phase(double x, double dxoff) const {
        return dxoff * derivative(x);
    }

    /// Quantum kick generator V(x + δx/2) − V(x − δx/2), evaluated through
    /// the odd-power expansion 2 Σ_{j odd} C(k,j) c_k x^{k−j} (δx/2)^j.
    /// The j = 1 term is δx · V'(x) computed by the same Horner pass as
    /// classical_phase, so for potentials of degree <= 2 the two phases are
    /// identical bit for bit; the expansion is exact for polynomials and is
    /// odd in δx by construction.
    double quantum_phase(double x, double dxoff) const;

    int degree() const { return degree_; }
    PotentialFamily family() const { return family_; }
    const Coeffs& coefficients() const { return coeffs_; }
    const std::vector<double>& params() const { return params_; }

private:
    Potential(PotentialFamily family, const Coeffs& coeffs,
              std::vector<double> params);

    PotentialFamily family_ = PotentialFamily::free_particle;
    Coeffs coeffs_{};        // c_k of V = Σ c_k x^k
    Coeffs deriv_coeffs_{};  // k c_k
    std::vector<double> params_;  // family parameters as given, for echoing
    int degree_ = 0;
};

/// Kick generator Φ(x, δx) sampled over the grid, p-fastest layout with the
/// δx axis in transform order. Φ is odd in δx and zero at δx = 0, which is
/// what keeps the kick multiplier realness-preserving.
struct KickPhase {
    Mechanics mechanics = Mechanics::classical;
    std::vector<double> phase;  // grid.size() entries, [i*np + l]
};

KickPhase classical_kick_phase(const Potential& pot, const PhaseSpaceGrid& grid);
KickPhase quantum_kick_phase(const Potential& pot, const PhaseSpaceGrid& grid);

/// |Φ_q − Φ_cl| per node; identically zero for degree <= 2, and O(δx³)
/// (leading term V'''(x) δx³/24) for smooth anharmonic potentials.
std::vector<double> phase_discrepancy(const Potential& pot,
                                      const PhaseSpaceGrid& grid);

std::vector<double> eval_potential(const Potential& pot,
                                   std::span<const double> x);
std::vector<double> eval_force_potential_derivative(const Potential& pot,
                                                    std::span<const double> x);

}  // namespace wlab
