#pragma once

#include <complex>
#include <cstddef>

namespace ans::kernels {

using cplx = std::complex<double>;

/// Which kernel implementation executes when the dispatched entry points run.
/// Parallel uses OpenMP worksharing; Serial is the reference implementation.
/// Both produce bitwise-identical results: elementwise kernels are
/// order-independent and reductions share a fixed chunking scheme.
enum class Backend { Serial, Parallel };

void set_backend(Backend b);
Backend backend();

/// Threads the parallel backend will use (1 for the serial backend or when
/// built without OpenMP).
int thread_count();

/// Fixed reduction chunk: partial sums are formed per chunk and combined in
/// chunk order, so the result does not depend on thread count.
inline constexpr std::size_t reduce_chunk = 4096;

// ---- elementwise kernels (spectral coefficients) ----
void scale(cplx* x, std::size_t n, double a);
void axpy(cplx* y, const cplx* x, std::size_t n, double a);
void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a);
void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a);
void mul_real(cplx* x, const double* m, std::size_t n);
void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n);
/// x[i] *= (k2[i] > 0 ? pow(k2[i], s) : (s == 0 ? 1 : 0)); the zero mode stays zero.
void pow_mul(cplx* x, const double* k2, std::size_t n, double s);
/// out[i] = i * k[i] * in[i]  (spectral derivative along the axis k tabulates)
void deriv(cplx* out, const cplx* in, const double* k, std::size_t n);
/// Per-mode Helmholtz-Leray projection of the two components onto k-perp.
void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2, std::size_t n);
void mask(cplx* x, const unsigned char* keep, std::size_t n);

// ---- physical-space kernels ----
void take_real(double* out, const cplx* in, std::size_t n);
void fill_complex(cplx* out, const double* re, std::size_t n);
/// n1 = u1*g1x + u2*g1y; n2 = u1*g2x + u2*g2y  (pointwise advection products)
void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n);

// ---- reductions (deterministic chunked) ----
/// sum_i w[i] * (|c1[i]|^2 + |c2[i]|^2)
double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n);
/// sum_i weight(k2[i], s) * (|c1[i]|^2 + |c2[i]|^2), weight as in pow_mul
double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s);
/// sum_i Re(a[i] * conj(b[i]))
double dot_re(const cplx* a, const cplx* b, std::size_t n);
/// max_i (a[i]^2 + b[i]^2)
double max_mag2_pair(const double* a, const double* b, std::size_t n);
/// max_i (g11^2 + g12^2 + g21^2 + g22^2)  (squared Frobenius norm of a 2x2 Jacobian)
double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n);
bool all_finite(const cplx* x, std::size_t n);

// Direct access to the two implementations, for equivalence tests and benchmarks.
namespace serial {
void scale(cplx* x, std::size_t n, double a);
void axpy(cplx* y, const cplx* x, std::size_t n, double a);
void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a);
void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a);
void mul_real(cplx* x, const double* m, std::size_t n);
void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n);
void pow_mul(cplx* x, const double* k2, std::size_t n, double s);
void deriv(cplx* out, const cplx* in, const double* k, std::size_t n);
void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2, std::size_t n);
void mask(cplx* x, const unsigned char* keep, std::size_t n);
void take_real(double* out, const cplx* in, std::size_t n);
void fill_complex(cplx* out, const double* re, std::size_t n);
void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n);
double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n);
double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s);
double dot_re(const cplx* a, const cplx* b, std::size_t n);
double max_mag2_pair(const double* a, const double* b, std::size_t n);
double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n);
bool all_finite(const cplx* x, std::size_t n);
}  // namespace serial

namespace par {
void scale(cplx* x, std::size_t n, double a);
void axpy(cplx* y, const cplx* x, std::size_t n, double a);
void caxpy(cplx* y, const cplx* x, std::size_t n, cplx a);
void assign_scaled(cplx* out, const cplx* x, std::size_t n, double a);
void mul_real(cplx* x, const double* m, std::size_t n);
void mul_real_out(cplx* out, const cplx* in, const double* m, std::size_t n);
void pow_mul(cplx* x, const double* k2, std::size_t n, double s);
void deriv(cplx* out, const cplx* in, const double* k, std::size_t n);
void leray(cplx* c1, cplx* c2, const double* kx, const double* ky, const double* k2, std::size_t n);
void mask(cplx* x, const unsigned char* keep, std::size_t n);
void take_real(double* out, const cplx* in, std::size_t n);
void fill_complex(cplx* out, const double* re, std::size_t n);
void advect(double* n1, double* n2, const double* u1, const double* u2, const double* g1x,
            const double* g1y, const double* g2x, const double* g2y, std::size_t n);
double sum_weighted_mag2(const cplx* c1, const cplx* c2, const double* w, std::size_t n);
double sum_pow_mag2(const cplx* c1, const cplx* c2, const double* k2, std::size_t n, double s);
double dot_re(const cplx* a, const cplx* b, std::size_t n);
double max_mag2_pair(const double* a, const double* b, std::size_t n);
double max_frob2(const double* g11, const double* g12, const double* g21, const double* g22,
                 std::size_t n);
bool all_finite(const cplx* x, std::size_t n);
}  // namespace par

}  // namespace ans::kernels
