#include "ans/noise.hpp"

#include <cmath>
#include <cstring>

#include "ans/csv.hpp"
#include "ans/errors.hpp"
#include "ans/rng.hpp"

namespace ans {

namespace {

std::int64_t snap_index(double t, double dt) {
    return static_cast<std::int64_t>(std::llround(t / dt));
}

void check_delta(double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw ConfigError("noise correlation time delta must lie in (0, 1], got " +
                          std::to_string(delta));
}

}  // namespace

WienerPath sample_wiener(std::uint64_t seed, double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw ConfigError("wiener step dt must be positive");
    if (!(t0 < t1)) throw ConfigError("wiener window needs t0 < t1");
    std::int64_t base = snap_index(t0, dt);
    std::int64_t end = snap_index(t1, dt);
    if (end <= base) throw ConfigError("wiener window is shorter than one step");
    std::int64_t steps = end - base;
    if (steps > 100000000)
        throw ResourceError("wiener window of " + std::to_string(steps) +
                            " steps exceeds the 1e8 cap");
    WienerPath p;
    p.seed = seed;
    p.dt = dt;
    p.base = base;
    p.t0 = base * dt;
    p.t1 = end * dt;
    p.dw.resize(static_cast<std::size_t>(steps));
    const double scale = std::sqrt(dt);
    for (std::int64_t n = 0; n < steps; ++n)
        p.dw[static_cast<std::size_t>(n)] =
            scale * rng::gaussian(seed, rng::Stream::Wiener, base + n);
    return p;
}

std::uint64_t path_checksum(const WienerPath& path) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    mix(&path.base, sizeof path.base);
    mix(&path.dt, sizeof path.dt);
    if (!path.dw.empty()) mix(path.dw.data(), path.dw.size() * sizeof(double));
    return h;
}

std::vector<double> colored_noise(const WienerPath& path, double delta) {
    check_delta(delta);
    double zeta0 = rng::gaussian(path.seed, rng::Stream::NoiseInit, path.base) /
                   std::sqrt(2.0 * delta);
    return colored_noise(path, delta, zeta0);
}

std::vector<double> colored_noise(const WienerPath& path, double delta, double zeta0) {
    check_delta(delta);
    const double E = std::exp(-path.dt / delta);
    const double s = std::sqrt((1.0 - E * E) / (2.0 * delta * path.dt));
    std::vector<double> zeta(path.steps() + 1);
    zeta[0] = zeta0;
    for (std::size_t n = 0; n < path.steps(); ++n) zeta[n + 1] = E * zeta[n] + s * path.dw[n];
    return zeta;
}

std::vector<double> y_process(const std::vector<double>& zeta, double dt, double y0) {
    if (zeta.empty()) throw ConfigError("y process needs a nonempty driving series");
    const double one_minus_E = -std::expm1(-dt);
    const double E = 1.0 - one_minus_E;
    const double slope_w = 1.0 - one_minus_E / dt;
    std::vector<double> y(zeta.size());
    y[0] = y0;
    for (std::size_t n = 0; n + 1 < zeta.size(); ++n)
        y[n + 1] = E * y[n] + zeta[n] * one_minus_E + (zeta[n + 1] - zeta[n]) * slope_w;
    return y;
}

std::vector<double> z_process(const WienerPath& path, double z0) {
    const double E = std::exp(-path.dt);
    const double s = std::sqrt((1.0 - E * E) / (2.0 * path.dt));
    std::vector<double> z(path.steps() + 1);
    z[0] = z0;
    for (std::size_t n = 0; n < path.steps(); ++n) z[n + 1] = E * z[n] + s * path.dw[n];
    return z;
}

double NoiseSeries::time_at(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }

double NoiseSeries::interp(const std::vector<double>& series, double t) const {
    if (series.empty()) throw ConfigError("interpolation on an empty series");
    double x = (t - t0) / dt;
    if (x <= 0.0) return series.front();
    if (x >= static_cast<double>(series.size() - 1)) return series.back();
    std::size_t i = static_cast<std::size_t>(x);
    double frac = x - static_cast<double>(i);
    return series[i] * (1.0 - frac) + series[i + 1] * frac;
}

NoiseSeries make_noise_series(std::uint64_t seed, double t0, double t1, double dt, double delta) {
    check_delta(delta);
    const double burn = 10.0 * std::max(1.0, delta);
    WienerPath ext = sample_wiener(seed, t0 - burn, t1, dt);
    std::int64_t head = snap_index(t0, dt);
    std::size_t skip = static_cast<std::size_t>(head - ext.base);

    std::vector<double> zeta = colored_noise(ext, delta);
    std::vector<double> y = y_process(zeta, dt, 0.0);
    std::vector<double> z = z_process(ext, 0.0);

    NoiseSeries s;
    s.t0 = head * dt;
    s.dt = dt;
    s.delta = delta;
    s.seed = seed;
    s.dw.assign(ext.dw.begin() + skip, ext.dw.end());
    s.zeta.assign(zeta.begin() + skip, zeta.end());
    s.y.assign(y.begin() + skip, y.end());
    s.z.assign(z.begin() + skip, z.end());
    return s;
}

double moment_estimate(const std::vector<double>& series, double m, std::size_t i0,
                       std::size_t i1) {
    if (i0 >= i1 || i1 > series.size())
        throw ConfigError("moment window is empty or out of range");
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::pow(std::abs(series[i]), m);
    return acc / static_cast<double>(i1 - i0);
}

std::vector<SupDiffRow> noise_convergence(const WienerPath& path,
                                          const std::vector<double>& deltas) {
    const double spin_up = 10.0;
    std::size_t skip = static_cast<std::size_t>(std::llround(spin_up / path.dt));
    if (skip >= path.steps())
        throw ConfigError("noise convergence window must exceed the 10 unit spin-up");
    std::vector<double> z = z_process(path, 0.0);
    std::vector<SupDiffRow> rows;
    rows.reserve(deltas.size());
    for (double d : deltas) {
        if (d > 0.5)
            throw ConfigError("noise convergence requires delta <= 1/2, got " +
                              std::to_string(d));
        std::vector<double> zeta = colored_noise(path, d);
        std::vector<double> y = y_process(zeta, path.dt, 0.0);
        SupDiffRow row{d, -1.0, 0.0};
        for (std::size_t n = skip; n < y.size(); ++n) {
            double diff = std::abs(y[n] - z[n]);
            if (diff > row.sup_diff) {
                row.sup_diff = diff;
                row.t_at_sup = (path.base + static_cast<std::int64_t>(n)) * path.dt;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_noise_csv(const NoiseSeries& series, const std::string& path) {
    auto out = csv::open_out(path);
    out << "t,zeta,y,z\n";
    for (std::size_t n = 0; n < series.zeta.size(); ++n)
        out << csv::num(series.time_at(n)) << ',' << csv::num(series.zeta[n]) << ','
            << csv::num(series.y[n]) << ',' << csv::num(series.z[n]) << '\n';
}

}  // namespace ans
