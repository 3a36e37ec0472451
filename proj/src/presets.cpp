#include "wlab/presets.hpp"

#include <stdexcept>

namespace wlab {

namespace {

// Harmonic oscillator, coherent state, 10 periods at dt = T/1000. Classical
// and quantum kick phases coincide for quadratic potentials, so the paired
// runs must agree to rounding everywhere.
const char* kQuadraticEquivalence = R"(# Quadratic equivalence: harmonic coherent state, classical vs quantum.
[grid]
nx = 256
np = 256
x_min = -10
x_max = 10
p_min = -10
p_max = 10
hbar = 1

[potential]
family = harmonic
m = 1
omega = 1

[initial]
x0 = 1.0
p0 = 0.0
sigma_x = 0.70710678118654752

[run]
mechanics = both
dt = 6.283185307179586e-3
t_final = 62.83185307179586
m = 1
record_every = 100

[output]
directory = out
snapshot_format = bin
snapshot_every = 0
write_hydro = false
)";

// Quartic oscillator: anharmonic, so the two mechanics separate. The run is
// long enough for the classical state to lose purity and positivity while
// the quantum one keeps both.
const char* kQuarticDivergence = R"(# Quartic divergence: pure Gaussian in V = x^4, classical vs quantum.
[grid]
nx = 256
np = 256
x_min = -4
x_max = 4
p_min = -12
p_max = 12
hbar = 1

[potential]
family = quartic
lambda = 1

[initial]
x0 = 1.0
p0 = 0.0
sigma_x = 0.25

[run]
mechanics = both
dt = 1e-3
t_final = 10
m = 1
record_every = 100

[output]
directory = out
snapshot_format = bin
snapshot_every = 0
write_hydro = false
)";

// Harmonic ground state, one period: the stationary reference for the
// hydrodynamic closure I = Q and the moment-equation residuals.
const char* kHydroClosure = R"(# Hydrodynamic closure: harmonic ground state, I = Q check.
[grid]
nx = 256
np = 256
x_min = -10
x_max = 10
p_min = -10
p_max = 10
hbar = 1

[potential]
family = harmonic
m = 1
omega = 1

[initial]
x0 = 0.0
p0 = 0.0
sigma_x = 0.70710678118654752

[run]
mechanics = quantum
dt = 6.283185307179586e-3
t_final = 6.283185307179586
m = 1
record_every = 100

[output]
directory = out
snapshot_format = bin
snapshot_every = 0
write_hydro = true
)";

}  // namespace

std::vector<std::string> preset_names() {
    return {"quadratic-equivalence", "quartic-divergence", "hydro-closure"};
}

std::string preset_text(const std::string& name) {
    if (name == "quadratic-equivalence") return kQuadraticEquivalence;
    if (name == "quartic-divergence") return kQuarticDivergence;
    if (name == "hydro-closure") return kHydroClosure;
    throw std::invalid_argument("unknown preset '" + name +
                                "' (available: quadratic-equivalence, "
                                "quartic-divergence, hydro-closure)");
}

}  // namespace wlab
