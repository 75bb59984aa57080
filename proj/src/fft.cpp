#include "svort/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace svort {

namespace {
// fftw_execute is thread-safe on distinct plans, but plan creation and
// destruction are not; ensemble workers construct their own Fft concurrently.
std::mutex& plan_mutex() {
    static std::mutex mu;
    return mu;
}
}  // namespace

struct Fft::Impl {
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~Impl() {
        {
            std::lock_guard<std::mutex> lock(plan_mutex());
            if (fwd) fftw_destroy_plan(fwd);
            if (bwd) fftw_destroy_plan(bwd);
        }
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

Fft::Fft(const Grid& g) : grid_(g), impl_(std::make_unique<Impl>()) {
    const int n = g.n;
    impl_->real_buf = fftw_alloc_real(static_cast<size_t>(n) * n);
    impl_->cplx_buf = fftw_alloc_complex(static_cast<size_t>(n) * (n / 2 + 1));
    if (!impl_->real_buf || !impl_->cplx_buf) throw std::bad_alloc();
    // FFTW_ESTIMATE keeps planning deterministic and cheap; these sizes are
    // transform-bound anyway.
    std::lock_guard<std::mutex> lock(plan_mutex());
    impl_->fwd = fftw_plan_dft_r2c_2d(n, n, impl_->real_buf, impl_->cplx_buf, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r_2d(n, n, impl_->cplx_buf, impl_->real_buf, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("fft: planning failed");
}

Fft::~Fft() = default;

void Fft::forward_into(const ScalarField& f, SpectralField& out) {
    if (!(f.grid == grid_)) throw std::invalid_argument("fft: grid mismatch");
    const size_t nr = static_cast<size_t>(grid_.n) * grid_.n;
    const size_t nc = static_cast<size_t>(grid_.n) * (grid_.n / 2 + 1);
    std::memcpy(impl_->real_buf, f.values.data(), nr * sizeof(double));
    fftw_execute(impl_->fwd);
    if (!(out.grid == grid_)) out = SpectralField(grid_);
    const double scale = 1.0 / static_cast<double>(nr);
    for (size_t i = 0; i < nc; ++i)
        out.coeff[i] = cplx{impl_->cplx_buf[i][0] * scale, impl_->cplx_buf[i][1] * scale};
}

void Fft::backward_into(const SpectralField& c, ScalarField& out) {
    if (!(c.grid == grid_)) throw std::invalid_argument("fft: grid mismatch");
    const size_t nr = static_cast<size_t>(grid_.n) * grid_.n;
    const size_t nc = static_cast<size_t>(grid_.n) * (grid_.n / 2 + 1);
    for (size_t i = 0; i < nc; ++i) {
        impl_->cplx_buf[i][0] = c.coeff[i].real();
        impl_->cplx_buf[i][1] = c.coeff[i].imag();
    }
    fftw_execute(impl_->bwd);
    if (!(out.grid == grid_)) out = ScalarField(grid_);
    std::memcpy(out.values.data(), impl_->real_buf, nr * sizeof(double));
}

SpectralField Fft::forward(const ScalarField& f) {
    SpectralField out(grid_);
    forward_into(f, out);
    return out;
}

ScalarField Fft::backward(const SpectralField& c) {
    ScalarField out(grid_);
    backward_into(c, out);
    return out;
}

} // namespace svort
