#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Forward declarations so fftw3.h stays out of the public headers.
struct fftw_plan_s;

namespace wlab::fft {

using cplx = std::complex<double>;

/// RAII pair of FFTW plans for a batch of 1-d complex transforms with fixed
/// geometry (length n, `howmany` transforms, element stride `stride`,
/// transform-to-transform distance `dist`). The plans operate in place on an
/// internally owned FFTW-aligned buffer; callers stage data through data().
///
/// Plans are created with FFTW_ESTIMATE: plan selection must not depend on
/// runtime timings or outputs become irreproducible between runs.
class BatchPlan {
public:
    BatchPlan(int n, int howmany, int stride, int dist);
    ~BatchPlan();
    BatchPlan(const BatchPlan&) = delete;
    BatchPlan& operator=(const BatchPlan&) = delete;

    cplx* data() { return buf_; }
    const cplx* data() const { return buf_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * howmany_; }

    void forward();   // sum f[j] e^{-2πi jl/n}, unnormalized
    void backward();  // sum f[l] e^{+2πi jl/n}, unnormalized

private:
    int n_, howmany_;
    cplx* buf_;
    fftw_plan_s* fwd_;
    fftw_plan_s* bwd_;
};

/// Unnormalized in-place transform of a single vector (sign -1 forward).
void transform(std::vector<cplx>& v, int sign);

/// Band-limited periodic translate: returns g with g(x) = f(x + shift),
/// where f is sampled on n points spanning `length` (endpoint excluded).
/// The Nyquist mode is handled symmetrically (cos factor) so real input
/// stays real.
std::vector<cplx> spectral_shift(const std::vector<cplx>& f, double shift,
                                 double length);
std::vector<double> spectral_shift(const std::vector<double>& f, double shift,
                                   double length);

/// Spectral derivative of a periodic real sample vector.
std::vector<double> spectral_derivative(const std::vector<double>& f,
                                        double length, int order = 1);

/// Spectral antiderivative of the zero-mean part of f. Returns A with
/// A'(x_j) = f(x_j) - mean(f) at the nodes and A[0] anchored so that the
/// full antiderivative is A[j] + mean(f) * x_j (caller adds the linear
/// ramp; it is not periodic).
std::vector<double> spectral_antiderivative(const std::vector<double>& f,
                                            double length, double* mean_out);

/// DFT frequency layout: 0, 1, ..., n/2-1, -n/2, ..., -1 (times 2π/length).
std::vector<double> dft_wavenumbers(int n, double length);

}  // namespace wlab::fft
