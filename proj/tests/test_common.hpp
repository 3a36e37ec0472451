#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "wlab/grid.hpp"
#include "wlab/state.hpp"

namespace wlab::test {

inline bool within_ulps(double a, double b, int ulps) {
    if (a == b) return true;
    const double scale = std::max({std::abs(a), std::abs(b)});
    return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * scale;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline PhaseSpaceGrid default_grid(int n = 256) {
    return build_phase_space_grid(n, n, -10.0, 10.0, -10.0, 10.0, 1.0);
}

inline WignerState random_state(const PhaseSpaceGrid& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    WignerState w;
    w.f.resize(grid.size());
    for (double& v : w.f) v = u(rng);
    return w;
}

}  // namespace wlab::test
