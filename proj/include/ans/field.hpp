#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ans/grid.hpp"
#include "ans/kernels.hpp"

namespace ans {

using kernels::cplx;

/// Two-component velocity field stored as Fourier coefficients, component
/// major: coefficient of component c at linear mode index i lives in
/// data[c*grid->size + i]. Valid fields are conjugate-symmetric (real in
/// physical space), mean-zero, divergence-free, and carry nothing on the
/// Nyquist lines.
class SpectralField {
public:
    explicit SpectralField(std::shared_ptr<const Grid> g);

    std::shared_ptr<const Grid> grid;
    std::vector<cplx> data;

    cplx* comp(int c) { return data.data() + static_cast<std::size_t>(c) * grid->size; }
    const cplx* comp(int c) const {
        return data.data() + static_cast<std::size_t>(c) * grid->size;
    }

    void zero();
    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    /// *this += a * x
    void axpy(double a, const SpectralField& x);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Largest coefficient difference between two fields on the same grid (both
/// components, complex modulus).
double linf_coeff_diff(const SpectralField& a, const SpectralField& b);

struct ModeEntry {
    int jx, jy;
    double re, im;
};

/// Sum of divergence-free single modes: entry (j, c) contributes the complex
/// amplitude c = re + i*im times the unit vector perpendicular to k(j) at
/// mode j, plus the conjugate at -j so the field is real. Modes must be
/// nonzero and off the Nyquist lines.
SpectralField make_mode_field(std::shared_ptr<const Grid> g, const std::vector<ModeEntry>& modes);

/// Random divergence-free field: independent complex Gaussian amplitudes on
/// all modes with 0 < max(|jx|,|jy|) <= bandlimit (conjugate pairs tied),
/// rescaled to the requested L2 norm. Deterministic in (seed, bandlimit).
SpectralField make_random_field(std::shared_ptr<const Grid> g, int bandlimit, double norm,
                                std::uint64_t seed);

/// u = A (sin kx x cos ky y, -cos kx x sin ky y) with kx = ky = 2*pi/L; an
/// exact steady solution of the unforced equations up to viscous decay.
SpectralField make_taylor_green(std::shared_ptr<const Grid> g, double amplitude);

/// Checks conjugate symmetry, zero mean, Nyquist emptiness, and the
/// divergence-free property; throws InvariantError naming the violation.
void validate_field(const SpectralField& f, double tol = 1e-12);

}  // namespace ans
