// OpenMP implementations. Elementwise loops are worksharing over independent
// indices; reductions compute the same fixed chunks as the serial backend and
// combine partials in chunk order, so results match the reference bitwise.

#include <algorithm>
#include <vector>

#include "kernels_detail.hpp"

namespace ans::kernels::par {

namespace {
using std::ptrdiff_t;
}

void scale(cplx* x, std::size_t n, double a) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) x[i] *= a;
}

void axpy(cplx* y, const cplx* x, std::size_t n, double a) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) y[i] += a * x[i];
}

void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) y[i] += a * x[i];
}

void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) out[i] = a * x[i];
}

void mul_real(cplx* x, const double* m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) x[i] *= m[i];
}

void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) out[i] = in[i] * m[i];
}

void pow_mul(cplx* x, const double* k2, std::size_t n, double s) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) x[i] *= detail::pow_weight(k2[i], s);
}

void deriv(cplx* out, const cplx* in, const double* k, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) out[i] = cplx(0.0, k[i]) * in[i];
}

void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2,
           std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) {
        if (k2[i] > 0.0) {
            cplx d = (kx[i] * c1[i] + ky[i] * c2[i]) / k2[i];
            c1[i] -= d * kx[i];
            c2[i] -= d * ky[i];
        } else {
            c1[i] = 0.0;
            c2[i] = 0.0;
        }
    }
}

void mask(cplx* x, const unsigned char* keep, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i)
        if (!keep[i]) x[i] = 0.0;
}

void take_real(double* out, const cplx* in, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) out[i] = in[i].real();
}

void fill_complex(cplx* out, const double* re, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) out[i] = cplx(re[i], 0.0);
}

void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < (ptrdiff_t)n; ++i) {
        n1[i] = u1[i] * g1x[i] + u2[i] * g1y[i];
        n2[i] = u1[i] * g2x[i] + u2[i] * g2y[i];
    }
}

double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<double> part(nc);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        part[c] = detail::chunk_weighted_mag2(c1, c2, w, lo, hi);
    }
    double acc = 0.0;
    for (double p : part) acc += p;
    return acc;
}

double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<double> part(nc);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        part[c] = detail::chunk_pow_mag2(c1, c2, k2, s, lo, hi);
    }
    double acc = 0.0;
    for (double p : part) acc += p;
    return acc;
}

double dot_re(const cplx* a, const cplx* b, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<double> part(nc);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        part[c] = detail::chunk_dot_re(a, b, lo, hi);
    }
    double acc = 0.0;
    for (double p : part) acc += p;
    return acc;
}

double max_mag2_pair(const double* a, const double* b, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<double> part(nc);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        part[c] = detail::chunk_max_mag2_pair(a, b, lo, hi);
    }
    double m = 0.0;
    for (double p : part)
        if (p > m) m = p;
    return m;
}

double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<double> part(nc);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        part[c] = detail::chunk_max_frob2(g11, g12, g21, g22, lo, hi);
    }
    double m = 0.0;
    for (double p : part)
        if (p > m) m = p;
    return m;
}

bool all_finite(const cplx* x, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    std::vector<unsigned char> ok(nc, 1);
#pragma omp parallel for schedule(static)
    for (ptrdiff_t c = 0; c < (ptrdiff_t)nc; ++c) {
        std::size_t lo = (std::size_t)c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        ok[c] = detail::chunk_all_finite(x, lo, hi) ? 1 : 0;
    }
    for (unsigned char o : ok)
        if (!o) return false;
    return true;
}

}  // namespace ans::kernels::par
