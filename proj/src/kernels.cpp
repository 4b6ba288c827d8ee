#include "ans/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ans::kernels {

namespace {

Backend& backend_state() {
#ifdef _OPENMP
    static Backend b = Backend::Parallel;
#else
    static Backend b = Backend::Serial;
#endif
    return b;
}

}  // namespace

void set_backend(Backend b) { backend_state() = b; }

Backend backend() { return backend_state(); }

int thread_count() {
#ifdef _OPENMP
    return backend_state() == Backend::Parallel ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

#define ANS_DISPATCH(call)                    \
    if (backend_state() == Backend::Parallel) \
        return par::call;                     \
    else                                      \
        return serial::call

void scale(cplx* x, std::size_t n, double a) { ANS_DISPATCH(scale(x, n, a)); }

void axpy(cplx* y, const cplx* x, std::size_t n, double a) { ANS_DISPATCH(axpy(y, x, n, a)); }

void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a) { ANS_DISPATCH(caxpy(y, x, n, a)); }

void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a) {
    ANS_DISPATCH(assign_scaled(out, x, n, a));
}

void mul_real(cplx* x, const double* m, std::size_t n) { ANS_DISPATCH(mul_real(x, m, n)); }

void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n) {
    ANS_DISPATCH(mul_real_out(out, in, m, n));
}

void pow_mul(cplx* x, const double* k2, std::size_t n, double s) {
    ANS_DISPATCH(pow_mul(x, k2, n, s));
}

void deriv(cplx* out, const cplx* in, const double* k, std::size_t n) {
    ANS_DISPATCH(deriv(out, in, k, n));
}

void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2,
           std::size_t n) {
    ANS_DISPATCH(leray(c1, c2, kx, ky, k2, n));
}

void mask(cplx* x, const unsigned char* keep, std::size_t n) { ANS_DISPATCH(mask(x, keep, n)); }

void take_real(double* out, const cplx* in, std::size_t n) { ANS_DISPATCH(take_real(out, in, n)); }

void fill_complex(cplx* out, const double* re, std::size_t n) {
    ANS_DISPATCH(fill_complex(out, re, n));
}

void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n) {
    ANS_DISPATCH(advect(n1, n2, u1, u2, g1x, g1y, g2x, g2y, n));
}

double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n) {
    ANS_DISPATCH(sum_weighted_mag2(c1, c2, w, n));
}

double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s) {
    ANS_DISPATCH(sum_pow_mag2(c1, c2, k2, n, s));
}

double dot_re(const cplx* a, const cplx* b, std::size_t n) { ANS_DISPATCH(dot_re(a, b, n)); }

double max_mag2_pair(const double* a, const double* b, std::size_t n) {
    ANS_DISPATCH(max_mag2_pair(a, b, n));
}

double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n) {
    ANS_DISPATCH(max_frob2(g11, g12, g21, g22, n));
}

bool all_finite(const cplx* x, std::size_t n) { ANS_DISPATCH(all_finite(x, n)); }

#undef ANS_DISPATCH

}  // namespace ans::kernels
