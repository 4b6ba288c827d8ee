#pragma once

// Shared per-chunk inner loops for the reduction kernels. Both backends run
// these chunk bodies and combine the partials in chunk index order, which
// keeps results bitwise identical across backends and thread counts.

#include <cmath>
#include <cstddef>

#include "ans/kernels.hpp"

namespace ans::kernels::detail {

inline std::size_t num_chunks(std::size_t n) {
    return n == 0 ? 0 : (n - 1) / reduce_chunk + 1;
}

inline double pow_weight(double k2, double s) {
    if (k2 > 0.0) return std::pow(k2, s);
    return s == 0.0 ? 1.0 : 0.0;
}

inline double chunk_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t lo,
                                  std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        acc += w[i] * (std::norm(c1[i]) + std::norm(c2[i]));
    return acc;
}

inline double chunk_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, double s,
                             std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        acc += pow_weight(k2[i], s) * (std::norm(c1[i]) + std::norm(c2[i]));
    return acc;
}

inline double chunk_dot_re(const cplx* a, const cplx* b, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return acc;
}

inline double chunk_max_mag2_pair(const double* a, const double* b, std::size_t lo,
                                  std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double v = a[i] * a[i] + b[i] * b[i];
        if (v > m) m = v;
    }
    return m;
}

inline double chunk_max_frob2(const double* g11, const double* g12, const double* g21,
                              const double* g22, std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double v = g11[i] * g11[i] + g12[i] * g12[i] + g21[i] * g21[i] + g22[i] * g22[i];
        if (v > m) m = v;
    }
    return m;
}

inline bool chunk_all_finite(const cplx* x, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
        if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) return false;
    return true;
}

}  // namespace ans::kernels::detail
