#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ans {

/// Uniform N x N Fourier grid for the periodic square [0, L]^2.
///
/// Linear index i = ix*N + iy with ix, iy in [0, N). The integer mode along
/// an axis follows FFT ordering: j(a) = a for a < N/2, else a - N, so the
/// index a = N/2 carries the Nyquist mode j = -N/2. Physical wavenumbers are
/// k = 2*pi*j/L, tabulated per linear index.
class Grid {
public:
    Grid(int N, double L);

    int N;
    double L;
    std::size_t size;  // N*N

    std::vector<double> kx, ky;    // wavenumber components
    std::vector<double> kx2, ky2;  // squared components (derivative-norm weights)
    std::vector<double> k2;        // |k|^2
    std::vector<double> mu;        // (kx^4 + ky^4)/|k|^2, 0 at the zero mode
    std::vector<unsigned char> dealias;   // 2/3-rule keep mask: 3|j_axis| <= N
    std::vector<unsigned char> nyq_free;  // keep mask excluding the j = -N/2 lines

    double dx() const { return L / N; }
    /// First eigenvalue of the Stokes operator on the mean-zero subspace.
    double lambda1() const;

    int wrap(int a) const { return a < N / 2 ? a : a - N; }
    std::size_t index(int ax, int ay) const {
        return static_cast<std::size_t>(ax) * N + static_cast<std::size_t>(ay);
    }
    /// Linear index of the integer mode (jx, jy), taken modulo N.
    std::size_t mode_index(int jx, int jy) const {
        int ax = ((jx % N) + N) % N;
        int ay = ((jy % N) + N) % N;
        return index(ax, ay);
    }
    /// Linear index of the mode -j paired with linear index i.
    std::size_t conj_index(std::size_t i) const {
        int ax = static_cast<int>(i) / N;
        int ay = static_cast<int>(i) % N;
        return index((N - ax) % N, (N - ay) % N);
    }
};

/// Validates N (even, 8..1024) and L (> 0); throws ConfigError otherwise.
std::shared_ptr<const Grid> make_grid(int N, double L);

}  // namespace ans
