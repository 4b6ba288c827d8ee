#include "ans/grid.hpp"

#include <cmath>
#include <string>

#include "ans/errors.hpp"

namespace ans {

Grid::Grid(int N_, double L_) : N(N_), L(L_), size(static_cast<std::size_t>(N_) * N_) {
    kx.resize(size);
    ky.resize(size);
    kx2.resize(size);
    ky2.resize(size);
    k2.resize(size);
    mu.resize(size);
    dealias.resize(size);
    nyq_free.resize(size);

    const double base = 2.0 * M_PI / L;
    for (int ax = 0; ax < N; ++ax) {
        int jx = wrap(ax);
        for (int ay = 0; ay < N; ++ay) {
            int jy = wrap(ay);
            std::size_t i = index(ax, ay);
            double kxv = base * jx;
            double kyv = base * jy;
            kx[i] = kxv;
            ky[i] = kyv;
            kx2[i] = kxv * kxv;
            ky2[i] = kyv * kyv;
            k2[i] = kxv * kxv + kyv * kyv;
            mu[i] = k2[i] > 0.0
                        ? (kx2[i] * kx2[i] + ky2[i] * ky2[i]) / k2[i]
                        : 0.0;
            dealias[i] = (3 * std::abs(jx) <= N && 3 * std::abs(jy) <= N) ? 1 : 0;
            nyq_free[i] = (jx != -N / 2 && jy != -N / 2) ? 1 : 0;
        }
    }
}

double Grid::lambda1() const { return 4.0 * M_PI * M_PI / (L * L); }

std::shared_ptr<const Grid> make_grid(int N, double L) {
    if (N < 8 || N > 1024 || N % 2 != 0)
        throw ConfigError("grid.N must be even and within [8, 1024], got " + std::to_string(N));
    if (!(L > 0.0))
        throw ConfigError("grid.L must be positive, got " + std::to_string(L));
    return std::make_shared<const Grid>(N, L);
}

}  // namespace ans
