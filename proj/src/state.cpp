#include "wlab/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wlab {

namespace {

// Phase factors e^{+i p_min δx_l / ħ} that turn the raw DFT along p into the
// physically indexed transform (the p grid does not start at zero).
std::vector<cplx> pmin_phases(const PhaseSpaceGrid& grid) {
    std::vector<cplx> ph(grid.np);
    for (int l = 0; l < grid.np; ++l)
        ph[l] = std::polar(1.0, grid.p_min * grid.dxoff_values[l] / grid.hbar);
    return ph;
}

}  // namespace

PureState gaussian_wavepacket(const PhaseSpaceGrid& grid, double x0, double p0,
                              double sigma_x) {
    if (!(sigma_x > 0.0)) throw std::invalid_argument("sigma_x must be positive");
    const double sigma_p = 0.5 * grid.hbar / sigma_x;
    std::ostringstream problems;
    if (x0 - 4.0 * sigma_x < grid.x_min || x0 + 4.0 * sigma_x > grid.x_max)
        problems << "  - x support margin below 4 sigma_x (aliasing hazard)\n";
    if (p0 - 4.0 * sigma_p < grid.p_min || p0 + 4.0 * sigma_p > grid.p_max)
        problems << "  - p support margin below 4 sigma_p (aliasing hazard)\n";
    const std::string text = problems.str();
    if (!text.empty())
        throw std::invalid_argument("gaussian_wavepacket rejected:\n" + text);

    PureState st;
    st.x0 = x0;
    st.p0 = p0;
    st.sigma_x = sigma_x;
    st.is_gaussian = true;
    st.psi.resize(grid.nx);
    const double norm = std::pow(2.0 * M_PI * sigma_x * sigma_x, -0.25);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x_values[i];
        const double arg = -(x - x0) * (x - x0) / (4.0 * sigma_x * sigma_x);
        st.psi[i] = norm * std::exp(arg) * std::polar(1.0, p0 * x / grid.hbar);
    }
    normalize(st, grid);
    return st;
}

ZMatrix pure_to_z(const PureState& psi, const PhaseSpaceGrid& grid) {
    if (static_cast<int>(psi.psi.size()) != grid.nx)
        throw std::invalid_argument("pure_to_z: psi size mismatch");

    // Midpoint arguments x ± δx/2 reach up to πħ/(2 dp) past the box, which
    // can exceed the box itself; a plain periodic translate would wrap the
    // tails back in. Zero-pad ψ onto an enlarged grid first, then translate
    // spectrally there.
    const double reach = M_PI * grid.hbar / (grid.dp * grid.dx);
    int m = grid.nx;
    while (m < grid.nx + static_cast<int>(std::ceil(reach)) + 2) m *= 2;
    const int offset = (m - grid.nx) / 2;

    std::vector<cplx> spec(m, cplx(0.0, 0.0));
    for (int i = 0; i < grid.nx; ++i) spec[offset + i] = psi.psi[i];
    fft::transform(spec, -1);
    const auto k = fft::dft_wavenumbers(m, m * grid.dx);

    fft::BatchPlan plan(m, 1, 1, m);
    const double inv_m = 1.0 / m;
    auto translate = [&](double shift, std::vector<cplx>& out) {
        cplx* buf = plan.data();
        for (int l = 0; l < m; ++l) {
            const cplx mult = (l == m / 2) ? cplx(std::cos(k[l] * shift), 0.0)
                                           : std::polar(1.0, k[l] * shift);
            buf[l] = spec[l] * mult;
        }
        plan.backward();
        out.resize(grid.nx);
        for (int i = 0; i < grid.nx; ++i) out[i] = buf[offset + i] * inv_m;
    };

    ZMatrix zm;
    zm.z.resize(grid.size());
    std::vector<cplx> plus, minus;
    for (int l = 0; l < grid.np; ++l) {
        const double half = 0.5 * grid.dxoff_values[l];
        translate(+half, plus);
        translate(-half, minus);
        // The δx-Nyquist bin is self-conjugate (it stands for ±δx_max at
        // once), so it takes the symmetrized real part, consistent with the
        // cosine treatment of that bin in every transform.
        if (l == grid.np / 2) {
            for (int i = 0; i < grid.nx; ++i)
                zm.z[grid.at(i, l)] = (plus[i] * std::conj(minus[i])).real();
        } else {
            for (int i = 0; i < grid.nx; ++i)
                zm.z[grid.at(i, l)] = plus[i] * std::conj(minus[i]);
        }
    }
    return zm;
}

double hermiticity_residual(const ZMatrix& zmat, const PhaseSpaceGrid& grid) {
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        for (int l = 0; l < grid.np; ++l) {
            const int lm = (grid.np - l) % grid.np;  // the −δx bin
            const cplx diff =
                zmat.z[grid.at(i, l)] - std::conj(zmat.z[grid.at(i, lm)]);
            worst = std::max(worst, std::abs(diff));
        }
    }
    return worst;
}

WignerState z_to_wigner(const ZMatrix& zmat, const PhaseSpaceGrid& grid,
                        double* imag_residue) {
    if (zmat.z.size() != grid.size())
        throw std::invalid_argument("z_to_wigner: size mismatch");
    const double herm = hermiticity_residual(zmat, grid);
    if (herm > 1e-6) {
        std::ostringstream msg;
        msg << "z_to_wigner: Hermiticity image violated (residual " << herm
            << "); upstream state is corrupted";
        throw std::runtime_error(msg.str());
    }

    const auto phases = pmin_phases(grid);
    fft::BatchPlan plan(grid.np, grid.nx, 1, grid.np);
    cplx* buf = plan.data();
    for (int i = 0; i < grid.nx; ++i)
        for (int l = 0; l < grid.np; ++l)
            buf[grid.at(i, l)] = zmat.z[grid.at(i, l)] * std::conj(phases[l]);
    plan.forward();

    // dδx / 2πħ = 1/(np dp)
    const double scale = 1.0 / (grid.np * grid.dp);
    WignerState wig;
    wig.time = zmat.time;
    wig.f.resize(grid.size());
    double resid = 0.0;
    for (std::size_t m = 0; m < grid.size(); ++m) {
        const cplx v = buf[m] * scale;
        resid = std::max(resid, std::abs(v.imag()));
        wig.f[m] = v.real();
    }
    if (imag_residue) *imag_residue = resid;
    return wig;
}

ZMatrix wigner_to_z(const WignerState& wig, const PhaseSpaceGrid& grid) {
    if (wig.f.size() != grid.size())
        throw std::invalid_argument("wigner_to_z: size mismatch");
    const auto phases = pmin_phases(grid);
    fft::BatchPlan plan(grid.np, grid.nx, 1, grid.np);
    cplx* buf = plan.data();
    for (std::size_t m = 0; m < grid.size(); ++m) buf[m] = wig.f[m];
    plan.backward();
    ZMatrix zm;
    zm.time = wig.time;
    zm.z.resize(grid.size());
    for (int i = 0; i < grid.nx; ++i)
        for (int l = 0; l < grid.np; ++l)
            zm.z[grid.at(i, l)] = buf[grid.at(i, l)] * phases[l] * grid.dp;
    return zm;
}

DensityMatrix assemble_density_matrix(const ZMatrix& zmat,
                                      const PhaseSpaceGrid& grid) {
    // z_to_wigner enforces the Hermiticity-image precondition. Interpolating
    // Z spectrally in δx and x is the same thing as summing the transform of
    // F at off-grid offsets, which is how the entries are evaluated here.
    WignerState wig = z_to_wigner(zmat, grid);

    // F on the half-shifted x grid, F(x + dx/2, p), one batch translate.
    fft::BatchPlan xplan(grid.nx, grid.np, grid.np, 1);
    cplx* buf = xplan.data();
    for (std::size_t m = 0; m < grid.size(); ++m) buf[m] = wig.f[m];
    xplan.forward();
    const auto k = grid.k_values;
    const double half_dx = 0.5 * grid.dx;
    for (int l = 0; l < grid.nx; ++l) {
        const cplx mult = (l == grid.nx / 2)
                              ? cplx(std::cos(k[l] * half_dx), 0.0)
                              : std::polar(1.0, k[l] * half_dx);
        for (int j = 0; j < grid.np; ++j) buf[grid.at(l, j)] *= mult;
    }
    xplan.backward();
    std::vector<double> f_half(grid.size());
    const double inv_nx = 1.0 / grid.nx;
    for (std::size_t m = 0; m < grid.size(); ++m)
        f_half[m] = buf[m].real() * inv_nx;

    // Phase table e^{+i p_j (d dx) / ħ} for diagonal offset d >= 0.
    const int nx = grid.nx, np = grid.np;
    std::vector<cplx> ptab(static_cast<std::size_t>(nx) * np);
    for (int d = 0; d < nx; ++d)
        for (int j = 0; j < np; ++j)
            ptab[static_cast<std::size_t>(d) * np + j] =
                std::polar(1.0, grid.p_values[j] * d * grid.dx / grid.hbar);

    DensityMatrix out;
    out.rho.resize(nx, nx);
    const double window = grid.dxoff_window();
    for (int u = 0; u < nx; ++u) {
        for (int v = 0; v <= u; ++v) {
            const int d = u - v;
            if (d * grid.dx >= window) {
                // Offsets beyond the δx window would alias; zero and count
                // (both mirror entries).
                out.rho(u, v) = 0.0;
                out.rho(v, u) = 0.0;
                out.truncated += (u == v) ? 1 : 2;
                continue;
            }
            const int s = u + v;
            const double* row = (s % 2 == 0) ? &wig.f[grid.at(s / 2, 0)]
                                             : &f_half[grid.at(s / 2, 0)];
            const cplx* ph = &ptab[static_cast<std::size_t>(d) * np];
            double re = 0.0, im = 0.0;
            for (int j = 0; j < np; ++j) {
                re += row[j] * ph[j].real();
                im += row[j] * ph[j].imag();
            }
            const cplx val = cplx(re, im) * grid.dp;
            out.rho(u, v) = val;
            out.rho(v, u) = std::conj(val);
        }
    }
    return out;
}

double normalize(WignerState& wig, const PhaseSpaceGrid& grid) {
    double total = 0.0;
    for (double v : wig.f) total += v;
    total *= grid.cell();
    if (!std::isfinite(total) || total <= 0.0)
        throw std::runtime_error("normalize: total mass is non-positive or not finite");
    const double factor = 1.0 / total;
    for (double& v : wig.f) v *= factor;
    return factor;
}

double normalize(PureState& psi, const PhaseSpaceGrid& grid) {
    double total = 0.0;
    for (const cplx& a : psi.psi) total += std::norm(a);
    total *= grid.dx;
    if (!std::isfinite(total) || total <= 0.0)
        throw std::runtime_error("normalize: total mass is non-positive or not finite");
    const double factor = 1.0 / std::sqrt(total);
    for (cplx& a : psi.psi) a *= factor;
    return factor;
}

PhaseSpaceMoments phase_space_moments(const WignerState& wig,
                                      const PhaseSpaceGrid& grid) {
    PhaseSpaceMoments m;
    double sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0, s = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x_values[i];
        double row = 0.0, rowp = 0.0, rowpp = 0.0;
        for (int j = 0; j < grid.np; ++j) {
            const double f = wig.f[grid.at(i, j)];
            const double p = grid.p_values[j];
            row += f;
            rowp += f * p;
            rowpp += f * p * p;
        }
        s += row;
        sx += row * x;
        sxx += row * x * x;
        sp += rowp;
        spp += rowpp;
    }
    const double cell = grid.cell();
    m.norm = s * cell;
    if (m.norm != 0.0) {
        m.mean_x = sx / s;
        m.mean_p = sp / s;
        m.var_x = sxx / s - m.mean_x * m.mean_x;
        m.var_p = spp / s - m.mean_p * m.mean_p;
    }
    return m;
}

}  // namespace wlab
