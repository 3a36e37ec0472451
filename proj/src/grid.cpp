#include "wlab/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "wlab/fourier.hpp"

namespace wlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double PhaseSpaceGrid::dxoff_spacing() const {
    return 2.0 * M_PI * hbar / (np * dp);
}

double PhaseSpaceGrid::dxoff_window() const { return M_PI * hbar / dp; }

PhaseSpaceGrid build_phase_space_grid(int nx, int np, double x_min, double x_max,
                                      double p_min, double p_max, double hbar) {
    std::ostringstream problems;
    auto complain = [&](const std::string& s) { problems << "  - " << s << "\n"; };

    if (!power_of_two(nx) || nx < 8)
        complain("nx must be a power of two >= 8 (got " + std::to_string(nx) + ")");
    if (!power_of_two(np) || np < 8)
        complain("np must be a power of two >= 8 (got " + std::to_string(np) + ")");
    if (!(x_max > x_min)) complain("x_max must exceed x_min");
    if (!(p_max > p_min)) complain("p_max must exceed p_min");
    if (!(hbar > 0.0)) complain("hbar must be positive");

    const std::string text = problems.str();
    if (!text.empty())
        throw std::invalid_argument("invalid phase-space grid:\n" + text);

    PhaseSpaceGrid g;
    g.nx = nx;
    g.np = np;
    g.x_min = x_min;
    g.x_max = x_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.hbar = hbar;
    g.dx = (x_max - x_min) / nx;
    g.dp = (p_max - p_min) / np;

    g.x_values.resize(nx);
    for (int i = 0; i < nx; ++i) g.x_values[i] = x_min + i * g.dx;
    g.p_values.resize(np);
    for (int j = 0; j < np; ++j) g.p_values[j] = p_min + j * g.dp;

    g.k_values = fft::dft_wavenumbers(nx, g.x_length());

    // δx[l] = ħ * (momentum-transform wavenumber), i.e. the offsets at which
    // the p -> δx transform samples the characteristic function.
    g.dxoff_values = fft::dft_wavenumbers(np, g.p_length());
    for (auto& v : g.dxoff_values) v *= hbar;

    return g;
}

std::pair<const std::vector<double>&, const std::vector<double>&> frequency_grid(
    const PhaseSpaceGrid& grid) {
    return {grid.k_values, grid.dxoff_values};
}

}  // namespace wlab
