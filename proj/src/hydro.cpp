#include "wlab/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wlab/fourier.hpp"

namespace wlab {

namespace {

int count_islands(const std::vector<std::uint8_t>& mask) {
    int islands = 0;
    bool in = false;
    for (std::uint8_t m : mask) {
        if (m && !in) ++islands;
        in = m != 0;
    }
    return islands;
}

// Full-grid completion of values defined on the mask: mask nodes keep their
// value, interior gaps are bridged linearly (trapezoid rule across holes),
// and the wrap-around exterior stretch gets a C¹ cubic Hermite blend so the
// periodized integrand has no kink at the mask edges — a kink there would
// ring through the spectral antiderivative back onto the mask.
std::vector<double> bridge_mask_periodic(const std::vector<double>& vals,
                                         const std::vector<std::uint8_t>& mask) {
    const int n = static_cast<int>(vals.size());
    std::vector<double> g(n, 0.0);
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i)
        if (mask[i]) {
            if (first < 0) first = i;
            last = i;
        }
    if (first < 0) throw std::runtime_error("hydro: empty mask");

    int prev = first;
    g[first] = vals[first];
    for (int step = 1; step < n; ++step) {
        const int i = (first + step) % n;
        if (!mask[i]) continue;
        const int gap = step - (prev - first + n) % n - 1;
        if (gap > 0) {
            const double a = vals[prev], b = vals[i];
            for (int q = 1; q <= gap; ++q)
                g[(prev + q) % n] = a + (b - a) * q / (gap + 1);
        }
        g[i] = vals[i];
        prev = i;
    }

    // Exterior stretch from `last` around to `first`: cubic Hermite matching
    // value and a one-sided slope estimate at both mask edges (per-cell
    // slopes rescaled to the unit parameter).
    const int gap = (first - last + n) % n - 1;
    if (gap > 0) {
        auto slope_at = [&](int i, int dir) {
            const int j = i + dir;
            if (j >= 0 && j < n && mask[j]) return dir * (vals[i] - vals[j]);
            return 0.0;
        };
        const double L = gap + 1;
        const double v0 = vals[last], v1 = vals[first];
        const double s0 = slope_at(last, -1) * L;
        const double s1 = slope_at(first, +1) * L;
        for (int q = 1; q <= gap; ++q) {
            const double u = q / L;
            const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
            const double h10 = u * (1 - u) * (1 - u);
            const double h01 = u * u * (3 - 2 * u);
            const double h11 = u * u * (u - 1);
            g[(last + q) % n] = h00 * v0 + h10 * s0 + h01 * v1 + h11 * s1;
        }
    }
    return g;
}

// Antiderivative of the masked integrand. An affine trend pinned to the two
// mask-edge values integrates in closed form; only the edge-vanishing
// residual goes through the periodized spectral antiderivative, so the
// periodization never rings a large trend across the mask. Gap bridging of
// the residual is linear (interior) and C¹ Hermite (exterior wrap).
std::vector<double> antiderivative_on_mask(const std::vector<double>& integrand,
                                           const std::vector<std::uint8_t>& mask,
                                           const PhaseSpaceGrid& grid) {
    const int n = grid.nx;
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i)
        if (mask[i]) {
            if (first < 0) first = i;
            last = i;
        }
    if (first < 0) throw std::runtime_error("hydro: empty mask");

    const double g_lo = integrand[first], g_hi = integrand[last];
    const double slope =
        (last > first) ? (g_hi - g_lo) / ((last - first) * grid.dx) : 0.0;

    std::vector<double> resid(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (mask[i]) resid[i] = integrand[i] - (g_lo + slope * (i - first) * grid.dx);

    const auto bridged = bridge_mask_periodic(resid, mask);
    double mean = 0.0;
    auto A = fft::spectral_antiderivative(bridged, grid.x_length(), &mean);
    for (int i = 0; i < n; ++i) {
        const double u = (i - first) * grid.dx;
        A[i] += mean * grid.dx * i + g_lo * u + 0.5 * slope * u * u;
    }
    return A;
}

double masked_l2(const std::vector<double>& v,
                 const std::vector<std::uint8_t>& mask, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mask[i]) s += v[i] * v[i];
    return std::sqrt(s * dx);
}

}  // namespace

HydroFields moments(const WignerState& wig, const PhaseSpaceGrid& grid,
                    double n_floor_rel) {
    if (wig.f.size() != grid.size())
        throw std::invalid_argument("moments: size mismatch");
    HydroFields h;
    const int nx = grid.nx, np = grid.np;
    h.n.resize(nx);
    h.m1.resize(nx);
    h.pbar.assign(nx, 0.0);
    h.sigma2.assign(nx, 0.0);
    h.m2_smooth.resize(nx);
    h.mask.assign(nx, 0);

    for (int i = 0; i < nx; ++i) {
        double s0 = 0.0, s1 = 0.0;
        for (int j = 0; j < np; ++j) {
            const double f = wig.f[grid.at(i, j)];
            s0 += f;
            s1 += f * grid.p_values[j];
        }
        h.n[i] = s0 * grid.dp;
        h.m1[i] = s1 * grid.dp;
    }

    const double n_max = *std::max_element(h.n.begin(), h.n.end());
    h.n_floor = n_floor_rel * std::max(n_max, 0.0);

    for (int i = 0; i < nx; ++i) {
        const bool on = h.n[i] > h.n_floor;
        h.mask[i] = on ? 1 : 0;
        const double n_eff = std::max(h.n[i], h.n_floor);
        const double pb = n_eff > 0.0 ? h.m1[i] / n_eff : 0.0;
        double s2 = 0.0;
        for (int j = 0; j < np; ++j) {
            const double d = grid.p_values[j] - pb;
            s2 += wig.f[grid.at(i, j)] * d * d;
        }
        h.m2_smooth[i] = s2 * grid.dp;
        if (on) {
            h.pbar[i] = pb;
            h.sigma2[i] = h.m2_smooth[i] / h.n[i];
        }
    }
    return h;
}

void compute_W(HydroFields& fields, const PhaseSpaceGrid& grid) {
    auto W = antiderivative_on_mask(fields.pbar, fields.mask, grid);
    const int peak = static_cast<int>(std::distance(
        fields.n.begin(), std::max_element(fields.n.begin(), fields.n.end())));
    const double offset = W[peak];
    for (double& w : W) w -= offset;
    fields.W = std::move(W);
}

void compute_I(HydroFields& fields, const PhaseSpaceGrid& grid, double mass) {
    const int islands = count_islands(fields.mask);
    if (islands == 0) throw std::runtime_error("compute_I: empty mask");
    if (islands > 8)
        throw std::runtime_error("compute_I: mask fragmented into " +
                                 std::to_string(islands) + " islands (max 8)");

    const auto m2x = fft::spectral_derivative(fields.m2_smooth, grid.x_length());
    std::vector<double> ix(grid.nx, 0.0);
    for (int i = 0; i < grid.nx; ++i) {
        const double n_eff = std::max(fields.n[i], fields.n_floor);
        ix[i] = m2x[i] / (n_eff * mass);
    }
    auto I = antiderivative_on_mask(ix, fields.mask, grid);

    // Fix the additive constant so that ∫ n σ²/(2m) dx = ∫ n I dx exactly in
    // the discrete mask quadrature.
    double target = 0.0, got = 0.0, weight = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        if (!fields.mask[i]) continue;
        target += fields.n[i] * fields.sigma2[i];
        got += fields.n[i] * I[i];
        weight += fields.n[i];
    }
    const double c = (target / (2.0 * mass) - got) / weight;
    fields.I.assign(grid.nx, 0.0);
    for (int i = 0; i < grid.nx; ++i)
        if (fields.mask[i]) fields.I[i] = I[i] + c;
}

std::vector<double> compute_Q_from_modulus(const std::vector<double>& modulus,
                                           const PhaseSpaceGrid& grid,
                                           double mass, double n_floor_abs) {
    if (static_cast<int>(modulus.size()) != grid.nx)
        throw std::invalid_argument("compute_Q: modulus size mismatch");
    const auto rxx = fft::spectral_derivative(modulus, grid.x_length(), 2);
    std::vector<double> Q(grid.nx, 0.0);
    const double c = -grid.hbar * grid.hbar / (2.0 * mass);
    for (int i = 0; i < grid.nx; ++i) {
        if (modulus[i] * modulus[i] > n_floor_abs) Q[i] = c * rxx[i] / modulus[i];
    }
    return Q;
}

std::vector<double> compute_Q(const PureState& psi, const PhaseSpaceGrid& grid,
                              double mass, double n_floor_rel) {
    std::vector<double> r(grid.nx);
    double r2max = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        r[i] = std::abs(psi.psi[i]);
        r2max = std::max(r2max, r[i] * r[i]);
    }
    return compute_Q_from_modulus(r, grid, mass, n_floor_rel * r2max);
}

namespace {

// First time derivative from three snapshots at (t−, t0, t+); exact for
// quadratics in t, handles a non-uniform final interval.
std::vector<double> three_point_dt(const std::vector<double>& fm,
                                   const std::vector<double>& f0,
                                   const std::vector<double>& fp, double hm,
                                   double hp) {
    std::vector<double> d(f0.size());
    const double denom = hp * hm * (hp + hm);
    for (std::size_t i = 0; i < f0.size(); ++i)
        d[i] = (hm * hm * fp[i] + (hp * hp - hm * hm) * f0[i] -
                hp * hp * fm[i]) /
               denom;
    return d;
}

void check_window(const Trajectory& traj, int t_index) {
    if (t_index < 1 || t_index + 1 >= static_cast<int>(traj.snapshots.size()))
        throw std::invalid_argument(
            "residual: need snapshots on both sides of t_index");
}

}  // namespace

double continuity_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                           double mass, int t_index, double n_floor_rel) {
    check_window(traj, t_index);
    const auto hm_ = moments(traj.snapshots[t_index - 1], grid, n_floor_rel);
    const auto h0 = moments(traj.snapshots[t_index], grid, n_floor_rel);
    const auto hp_ = moments(traj.snapshots[t_index + 1], grid, n_floor_rel);
    const double hm = traj.times[t_index] - traj.times[t_index - 1];
    const double hp = traj.times[t_index + 1] - traj.times[t_index];

    const auto nt = three_point_dt(hm_.n, h0.n, hp_.n, hm, hp);

    // Flux n p̄ is exactly the first moment; no mask jump to differentiate.
    std::vector<double> flux(grid.nx);
    for (int i = 0; i < grid.nx; ++i) flux[i] = h0.m1[i] / mass;
    auto rhs = fft::spectral_derivative(flux, grid.x_length());
    for (double& v : rhs) v = -v;

    std::vector<double> resid(grid.nx, 0.0);
    for (int i = 0; i < grid.nx; ++i) resid[i] = nt[i] - rhs[i];

    const double num = masked_l2(resid, h0.mask, grid.dx);
    const double l2_rhs = masked_l2(rhs, h0.mask, grid.dx);
    const double l2_nt = masked_l2(nt, h0.mask, grid.dx);
    const double l2_n = masked_l2(h0.n, h0.mask, grid.dx);
    // Scale floor keeps the ratio meaningful for stationary states where
    // both sides vanish.
    const double floor = 1e-6 * l2_n / (0.5 * (hm + hp));
    return num / std::max({l2_rhs, l2_nt, floor});
}

double motion_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                       const Potential& pot, double mass, int t_index,
                       double n_floor_rel) {
    check_window(traj, t_index);
    HydroFields hm_ = moments(traj.snapshots[t_index - 1], grid, n_floor_rel);
    HydroFields h0 = moments(traj.snapshots[t_index], grid, n_floor_rel);
    HydroFields hp_ = moments(traj.snapshots[t_index + 1], grid, n_floor_rel);
    compute_W(hm_, grid);
    compute_W(h0, grid);
    compute_W(hp_, grid);
    compute_I(h0, grid, mass);
    const double hm = traj.times[t_index] - traj.times[t_index - 1];
    const double hp = traj.times[t_index + 1] - traj.times[t_index];

    const auto wt = three_point_dt(hm_.W, h0.W, hp_.W, hm, hp);

    std::vector<std::uint8_t> inter(grid.nx);
    for (int i = 0; i < grid.nx; ++i)
        inter[i] = h0.mask[i] && hm_.mask[i] && hp_.mask[i];

    // W_x = p̄ by definition; no numerical differentiation of W enters.
    std::vector<double> rhs(grid.nx, 0.0), resid(grid.nx, 0.0);
    for (int i = 0; i < grid.nx; ++i) {
        if (!inter[i]) continue;
        const double ham = h0.pbar[i] * h0.pbar[i] / (2.0 * mass) +
                           pot.value(grid.x_values[i]) + h0.I[i];
        rhs[i] = -ham;
        resid[i] = wt[i] + ham;
    }

    // Remove the spatially constant gauge (W's zero point is re-anchored
    // every snapshot, so W_t carries an arbitrary constant).
    double mean = 0.0;
    int count = 0;
    for (int i = 0; i < grid.nx; ++i)
        if (inter[i]) {
            mean += resid[i];
            ++count;
        }
    if (count == 0) throw std::runtime_error("motion_residual: empty mask");
    mean /= count;
    for (int i = 0; i < grid.nx; ++i)
        if (inter[i]) resid[i] -= mean;

    const double num = masked_l2(resid, inter, grid.dx);
    const double den = masked_l2(rhs, inter, grid.dx);
    return num / std::max(den, 1e-300);
}

}  // namespace wlab
