#include "wlab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace wlab::fft {

namespace {

// The FFTW planner mutates global state; executes are thread-safe, planning
// is not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

BatchPlan::BatchPlan(int n, int howmany, int stride, int dist)
    : n_(n), howmany_(howmany) {
    if (n < 1 || howmany < 1) throw std::invalid_argument("BatchPlan: bad geometry");
    buf_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size()));
    if (!buf_) throw std::bad_alloc();
    auto* raw = reinterpret_cast<fftw_complex*>(buf_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_many_dft(1, &n_, howmany_, raw, nullptr, stride, dist, raw,
                              nullptr, stride, dist, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_many_dft(1, &n_, howmany_, raw, nullptr, stride, dist, raw,
                              nullptr, stride, dist, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("BatchPlan: FFTW planning failed");
}

BatchPlan::~BatchPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
}

void BatchPlan::forward() { fftw_execute(fwd_); }
void BatchPlan::backward() { fftw_execute(bwd_); }

void transform(std::vector<cplx>& v, int sign) {
    const int n = static_cast<int>(v.size());
    BatchPlan plan(n, 1, 1, n);
    std::copy(v.begin(), v.end(), plan.data());
    if (sign < 0)
        plan.forward();
    else
        plan.backward();
    std::copy(plan.data(), plan.data() + n, v.begin());
}

std::vector<double> dft_wavenumbers(int n, double length) {
    std::vector<double> k(n);
    const double dk = 2.0 * M_PI / length;
    for (int l = 0; l < n; ++l) {
        const int ls = (l < (n + 1) / 2) ? l : l - n;
        k[l] = dk * ls;
    }
    return k;
}

std::vector<cplx> spectral_shift(const std::vector<cplx>& f, double shift,
                                 double length) {
    const int n = static_cast<int>(f.size());
    std::vector<cplx> g = f;
    transform(g, -1);
    const auto k = dft_wavenumbers(n, length);
    for (int l = 0; l < n; ++l) {
        if (n % 2 == 0 && l == n / 2) {
            g[l] *= std::cos(k[l] * shift);  // symmetric Nyquist
        } else {
            g[l] *= std::polar(1.0, k[l] * shift);
        }
    }
    transform(g, +1);
    const double inv = 1.0 / n;
    for (auto& v : g) v *= inv;
    return g;
}

std::vector<double> spectral_shift(const std::vector<double>& f, double shift,
                                   double length) {
    std::vector<cplx> fc(f.begin(), f.end());
    auto gc = spectral_shift(fc, shift, length);
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = gc[i].real();
    return g;
}

std::vector<double> spectral_derivative(const std::vector<double>& f,
                                        double length, int order) {
    const int n = static_cast<int>(f.size());
    std::vector<cplx> g(f.begin(), f.end());
    transform(g, -1);
    const auto k = dft_wavenumbers(n, length);
    for (int l = 0; l < n; ++l) {
        cplx mult = std::pow(cplx(0.0, k[l]), order);
        // An even-order derivative keeps the Nyquist mode (real multiplier);
        // odd orders have no consistent sign there and conventionally drop it.
        if (n % 2 == 0 && l == n / 2 && order % 2 != 0) mult = 0.0;
        g[l] *= mult;
    }
    transform(g, +1);
    std::vector<double> out(n);
    const double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = g[i].real() * inv;
    return out;
}

std::vector<double> spectral_antiderivative(const std::vector<double>& f,
                                            double length, double* mean_out) {
    const int n = static_cast<int>(f.size());
    std::vector<cplx> g(f.begin(), f.end());
    transform(g, -1);
    const auto k = dft_wavenumbers(n, length);
    const double mean = g[0].real() / n;
    g[0] = 0.0;
    for (int l = 1; l < n; ++l) {
        if (n % 2 == 0 && l == n / 2) {
            g[l] = 0.0;  // odd operation, see spectral_derivative
        } else {
            g[l] /= cplx(0.0, k[l]);
        }
    }
    transform(g, +1);
    std::vector<double> out(n);
    const double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = g[i].real() * inv;
    if (mean_out) *mean_out = mean;
    return out;
}

}  // namespace wlab::fft
