// Reference implementations of the compute kernels. Plain loops, no
// worksharing; the parallel backend must reproduce these bitwise.

#include <algorithm>

#include "kernels_detail.hpp"

namespace ans::kernels::serial {

void scale(cplx* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy(cplx* y, const cplx* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i];
}

void mul_real(cplx* x, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= m[i];
}

void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] * m[i];
}

void pow_mul(cplx* x, const double* k2, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= detail::pow_weight(k2[i], s);
}

void deriv(cplx* out, const cplx* in, const double* k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(0.0, k[i]) * in[i];
}

void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2,
           std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
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
    for (std::size_t i = 0; i < n; ++i)
        if (!keep[i]) x[i] = 0.0;
}

void take_real(double* out, const cplx* in, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i].real();
}

void fill_complex(cplx* out, const double* re, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(re[i], 0.0);
}

void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        n1[i] = u1[i] * g1x[i] + u2[i] * g1y[i];
        n2[i] = u1[i] * g2x[i] + u2[i] * g2y[i];
    }
}

double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    double acc = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        acc += detail::chunk_weighted_mag2(c1, c2, w, lo, hi);
    }
    return acc;
}

double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s) {
    std::size_t nc = detail::num_chunks(n);
    double acc = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        acc += detail::chunk_pow_mag2(c1, c2, k2, s, lo, hi);
    }
    return acc;
}

double dot_re(const cplx* a, const cplx* b, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    double acc = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        acc += detail::chunk_dot_re(a, b, lo, hi);
    }
    return acc;
}

double max_mag2_pair(const double* a, const double* b, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    double m = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        double v = detail::chunk_max_mag2_pair(a, b, lo, hi);
        if (v > m) m = v;
    }
    return m;
}

double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    double m = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        double v = detail::chunk_max_frob2(g11, g12, g21, g22, lo, hi);
        if (v > m) m = v;
    }
    return m;
}

bool all_finite(const cplx* x, std::size_t n) {
    std::size_t nc = detail::num_chunks(n);
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t lo = c * reduce_chunk;
        std::size_t hi = std::min(n, lo + reduce_chunk);
        if (!detail::chunk_all_finite(x, lo, hi)) return false;
    }
    return true;
}

}  // namespace ans::kernels::serial
