#include "ans/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "ans/errors.hpp"

namespace ans {

namespace {
// FFTW's planner mutates global state; execution via the new-array interface
// does not.
std::mutex planner_mutex;
}  // namespace

struct Transform::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Transform::Transform(int N) : n_(N), impl_(new Impl) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    std::size_t count = static_cast<std::size_t>(N) * N;
    fftw_complex* a = fftw_alloc_complex(count);
    fftw_complex* b = fftw_alloc_complex(count);
    if (!a || !b) throw ResourceError("FFT workspace allocation failed");
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl_->fwd = fftw_plan_dft_2d(N, N, a, b, FFTW_FORWARD, flags);
    impl_->bwd = fftw_plan_dft_2d(N, N, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    if (!impl_->fwd || !impl_->bwd) throw ResourceError("FFT plan creation failed");
}

Transform::~Transform() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
}

void Transform::forward(const kernels::cplx* phys, kernels::cplx* spec) const {
    fftw_execute_dft(impl_->fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<kernels::cplx*>(phys)),
                     reinterpret_cast<fftw_complex*>(spec));
    std::size_t count = static_cast<std::size_t>(n_) * n_;
    kernels::scale(spec, count, 1.0 / static_cast<double>(count));
}

void Transform::backward(const kernels::cplx* spec, kernels::cplx* phys) const {
    fftw_execute_dft(impl_->bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<kernels::cplx*>(spec)),
                     reinterpret_cast<fftw_complex*>(phys));
}

const Transform& get_transform(int N) {
    static std::mutex cache_mutex;
    static std::map<int, std::unique_ptr<Transform>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[N];
    if (!slot) slot = std::make_unique<Transform>(N);
    return *slot;
}

void padded_synthesis(const Grid& g, const kernels::cplx* spec, int M,
                      std::vector<kernels::cplx>& phys) {
    if (M < g.N) throw ConfigError("padded synthesis target must be at least as fine as the grid");
    std::vector<kernels::cplx> embedded(static_cast<std::size_t>(M) * M, kernels::cplx(0.0));
    for (int ax = 0; ax < g.N; ++ax) {
        int jx = g.wrap(ax);
        int bx = ((jx % M) + M) % M;
        for (int ay = 0; ay < g.N; ++ay) {
            int jy = g.wrap(ay);
            int by = ((jy % M) + M) % M;
            embedded[static_cast<std::size_t>(bx) * M + by] = spec[g.index(ax, ay)];
        }
    }
    phys.assign(static_cast<std::size_t>(M) * M, kernels::cplx(0.0));
    get_transform(M).backward(embedded.data(), phys.data());
}

}  // namespace ans
