#include "wlab/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace wlab {

std::string to_string(PotentialFamily f) {
    switch (f) {
        case PotentialFamily::free_particle: return "free";
        case PotentialFamily::linear: return "linear";
        case PotentialFamily::harmonic: return "harmonic";
        case PotentialFamily::quartic: return "quartic";
        case PotentialFamily::polynomial: return "polynomial";
    }
    return "?";
}

std::string to_string(Mechanics m) {
    return m == Mechanics::classical ? "classical" : "quantum";
}

Potential::Potential(PotentialFamily family, const Coeffs& coeffs,
                     std::vector<double> params)
    : family_(family), coeffs_(coeffs), params_(std::move(params)) {
    for (int k = 0; k <= max_degree; ++k) {
        if (!std::isfinite(coeffs_[k]))
            throw std::invalid_argument("potential coefficient not finite");
        if (coeffs_[k] != 0.0) degree_ = k;
    }
    for (int k = 1; k <= max_degree; ++k) deriv_coeffs_[k - 1] = k * coeffs_[k];
    deriv_coeffs_[max_degree] = 0.0;
}

Potential Potential::free_particle() {
    return Potential(PotentialFamily::free_particle, Coeffs{}, {});
}

Potential Potential::linear(double slope) {
    Coeffs c{};
    c[1] = slope;
    return Potential(PotentialFamily::linear, c, {slope});
}

Potential Potential::harmonic(double mass, double omega) {
    Coeffs c{};
    c[2] = 0.5 * mass * omega * omega;
    return Potential(PotentialFamily::harmonic, c, {mass, omega});
}

Potential Potential::quartic(double lambda, double mass, double omega) {
    Coeffs c{};
    c[4] = lambda;
    c[2] = 0.5 * mass * omega * omega;
    return Potential(PotentialFamily::quartic, c, {lambda, mass, omega});
}

Potential Potential::polynomial(std::span<const double> coeffs) {
    if (coeffs.size() > static_cast<std::size_t>(max_degree) + 1)
        throw std::invalid_argument("polynomial potential capped at degree 8");
    Coeffs c{};
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k];
    return Potential(PotentialFamily::polynomial, c,
                     std::vector<double>(coeffs.begin(), coeffs.end()));
}

namespace {

double horner(const Potential::Coeffs& c, int degree, double x) {
    double acc = c[degree];
    for (int k = degree - 1; k >= 0; --k) acc = acc * x + c[k];
    return acc;
}

// C(k, j) for k <= 8; small enough to tabulate on the fly.
double binomial(int k, int j) {
    double num = 1.0, den = 1.0;
    for (int i = 0; i < j; ++i) {
        num *= k - i;
        den *= i + 1;
    }
    return num / den;
}

}  // namespace

double Potential::value(double x) const { return horner(coeffs_, degree_, x); }

double Potential::derivative(double x) const {
    return horner(deriv_coeffs_, degree_ > 0 ? degree_ - 1 : 0, x);
}

double Potential::quantum_phase(double x, double dxoff) const {
    double phi = classical_phase(x, dxoff);
    if (degree_ <= 2) return phi;
    const double h = 0.5 * dxoff;
    double hj = h * h * h;
    for (int j = 3; j <= degree_; j += 2) {
        // B_j(x) = Σ_{k >= j} c_k C(k, j) x^{k-j}
        double b = 0.0;
        for (int k = degree_; k >= j; --k) b = b * x + coeffs_[k] * binomial(k, j);
        phi += 2.0 * hj * b;
        hj *= h * h;
    }
    return phi;
}

KickPhase classical_kick_phase(const Potential& pot, const PhaseSpaceGrid& grid) {
    KickPhase kp{Mechanics::classical, std::vector<double>(grid.size())};
    for (int i = 0; i < grid.nx; ++i) {
        const double vx = pot.derivative(grid.x_values[i]);
        for (int l = 0; l < grid.np; ++l)
            kp.phase[grid.at(i, l)] = grid.dxoff_values[l] * vx;
    }
    return kp;
}

KickPhase quantum_kick_phase(const Potential& pot, const PhaseSpaceGrid& grid) {
    KickPhase kp{Mechanics::quantum, std::vector<double>(grid.size())};
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x_values[i];
        for (int l = 0; l < grid.np; ++l)
            kp.phase[grid.at(i, l)] = pot.quantum_phase(x, grid.dxoff_values[l]);
    }
    return kp;
}

std::vector<double> phase_discrepancy(const Potential& pot,
                                      const PhaseSpaceGrid& grid) {
    const KickPhase cl = classical_kick_phase(pot, grid);
    const KickPhase qu = quantum_kick_phase(pot, grid);
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = std::abs(qu.phase[i] - cl.phase[i]);
    return d;
}

std::vector<double> eval_potential(const Potential& pot,
                                   std::span<const double> x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = pot.value(x[i]);
    return v;
}

std::vector<double> eval_force_potential_derivative(const Potential& pot,
                                                    std::span<const double> x) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = pot.derivative(x[i]);
    return v;
}

}  // namespace wlab
