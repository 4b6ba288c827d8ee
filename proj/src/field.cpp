#include "ans/field.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "ans/errors.hpp"
#include "ans/rng.hpp"

namespace ans {

SpectralField::SpectralField(std::shared_ptr<const Grid> g)
    : grid(std::move(g)), data(2 * grid->size, cplx(0.0, 0.0)) {}

void SpectralField::zero() { std::fill(data.begin(), data.end(), cplx(0.0, 0.0)); }

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    kernels::axpy(data.data(), o.data.data(), data.size(), 1.0);
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    kernels::axpy(data.data(), o.data.data(), data.size(), -1.0);
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    kernels::scale(data.data(), data.size(), a);
    return *this;
}

void SpectralField::axpy(double a, const SpectralField& x) {
    kernels::axpy(data.data(), x.data.data(), data.size(), a);
}

SpectralField operator+(SpectralField a, const SpectralField& b) {
    a += b;
    return a;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
}

SpectralField operator*(double a, SpectralField f) {
    f *= a;
    return f;
}

double linf_coeff_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = std::abs(a.data[i] - b.data[i]);
        if (d > m) m = d;
    }
    return m;
}

namespace {

// unit vector perpendicular to k(j); real, so conjugate pairs need only the
// amplitude conjugated
void perp_dir(const Grid& g, int jx, int jy, double& ex, double& ey) {
    std::size_t i = g.mode_index(jx, jy);
    double kn = std::sqrt(g.k2[i]);
    ex = -g.ky[i] / kn;
    ey = g.kx[i] / kn;
}

double l2_norm(const SpectralField& f) {
    const auto& g = *f.grid;
    double s = kernels::sum_pow_mag2(f.comp(0), f.comp(1), g.k2.data(), g.size, 0.0);
    return g.L * std::sqrt(s);
}

}  // namespace

SpectralField make_mode_field(std::shared_ptr<const Grid> g, const std::vector<ModeEntry>& modes) {
    SpectralField f(g);
    const Grid& gr = *f.grid;
    for (const auto& m : modes) {
        if (m.jx == 0 && m.jy == 0)
            throw ConfigError("mode (0,0) is not allowed: fields are mean-zero");
        if (std::abs(m.jx) >= gr.N / 2 || std::abs(m.jy) >= gr.N / 2)
            throw ConfigError("mode (" + std::to_string(m.jx) + "," + std::to_string(m.jy) +
                              ") out of range for N=" + std::to_string(gr.N) +
                              " (need |j| < N/2)");
        double ex, ey;
        perp_dir(gr, m.jx, m.jy, ex, ey);
        cplx c(m.re, m.im);
        std::size_t ip = gr.mode_index(m.jx, m.jy);
        std::size_t im = gr.mode_index(-m.jx, -m.jy);
        f.comp(0)[ip] += c * ex;
        f.comp(1)[ip] += c * ey;
        f.comp(0)[im] += std::conj(c) * ex;
        f.comp(1)[im] += std::conj(c) * ey;
    }
    return f;
}

SpectralField make_random_field(std::shared_ptr<const Grid> g, int bandlimit, double norm,
                                std::uint64_t seed) {
    const Grid& gr = *g;
    if (bandlimit < 1) throw ConfigError("random field bandlimit must be >= 1");
    int b = std::min(bandlimit, gr.N / 2 - 1);
    SpectralField f(std::move(g));
    std::int64_t counter = 0;
    for (int jx = -b; jx <= b; ++jx) {
        for (int jy = -b; jy <= b; ++jy) {
            ++counter;  // advance even for skipped modes: layout-stable addressing
            bool upper_half = jx > 0 || (jx == 0 && jy > 0);
            if (!upper_half) continue;
            auto gp = rng::gaussian_pair(seed, rng::Stream::Field, counter);
            cplx c(gp.g0 / std::sqrt(2.0), gp.g1 / std::sqrt(2.0));
            double ex, ey;
            perp_dir(gr, jx, jy, ex, ey);
            std::size_t ip = gr.mode_index(jx, jy);
            std::size_t im = gr.mode_index(-jx, -jy);
            f.comp(0)[ip] = c * ex;
            f.comp(1)[ip] = c * ey;
            f.comp(0)[im] = std::conj(c) * ex;
            f.comp(1)[im] = std::conj(c) * ey;
        }
    }
    double cur = l2_norm(f);
    if (!(cur > 0.0)) throw InvariantError("random field came out degenerate (zero norm)");
    f *= norm / cur;
    return f;
}

SpectralField make_taylor_green(std::shared_ptr<const Grid> g, double amplitude) {
    SpectralField f(g);
    const Grid& gr = *f.grid;
    const cplx iq(0.0, amplitude / 4.0);
    // sin x cos y and -cos x sin y expanded over the four modes (+-1, +-1)
    f.comp(0)[gr.mode_index(1, 1)] = -iq;
    f.comp(0)[gr.mode_index(1, -1)] = -iq;
    f.comp(0)[gr.mode_index(-1, 1)] = iq;
    f.comp(0)[gr.mode_index(-1, -1)] = iq;
    f.comp(1)[gr.mode_index(1, 1)] = iq;
    f.comp(1)[gr.mode_index(1, -1)] = -iq;
    f.comp(1)[gr.mode_index(-1, 1)] = iq;
    f.comp(1)[gr.mode_index(-1, -1)] = -iq;
    return f;
}

void validate_field(const SpectralField& f, double tol) {
    const Grid& g = *f.grid;
    for (int c = 0; c < 2; ++c) {
        const cplx* d = f.comp(c);
        std::size_t z = g.mode_index(0, 0);
        if (std::abs(d[z]) > tol) throw InvariantError("field has a nonzero mean mode");
        for (std::size_t i = 0; i < g.size; ++i) {
            if (!g.nyq_free[i] && std::abs(d[i]) > tol)
                throw InvariantError("field carries energy on a Nyquist line");
            std::size_t j = g.conj_index(i);
            if (std::abs(d[i] - std::conj(d[j])) > tol * std::max(1.0, std::abs(d[i])))
                throw InvariantError("field is not conjugate-symmetric");
        }
    }
    for (std::size_t i = 0; i < g.size; ++i) {
        cplx div = g.kx[i] * f.comp(0)[i] + g.ky[i] * f.comp(1)[i];
        double scale = std::max(1.0, std::sqrt(g.k2[i]) *
                                         std::max(std::abs(f.comp(0)[i]), std::abs(f.comp(1)[i])));
        if (std::abs(div) > tol * scale) throw InvariantError("field is not divergence-free");
    }
}

}  // namespace ans
