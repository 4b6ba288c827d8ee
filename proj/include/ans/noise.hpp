#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ans {

/// Two-sided Wiener path sampled on a uniform step grid. Increment n covers
/// [t0 + n*dt, t0 + (n+1)*dt) and is addressed by its absolute step index
/// round(t0/dt) + n, so regenerating the path with a window extended further
/// into the past reproduces the overlapping increments bitwise.
struct WienerPath {
    std::uint64_t seed = 0;
    double t0 = 0.0, t1 = 0.0, dt = 0.0;
    std::int64_t base = 0;  // absolute index of the first increment
    std::vector<double> dw;

    std::size_t steps() const { return dw.size(); }
    double time_at(std::size_t n) const { return (base + static_cast<std::int64_t>(n)) * dt; }
};

/// Samples increments dW_n ~ N(0, dt) for the window [t0, t1]. t0 and t1 are
/// snapped to the step grid (t = integer * dt). The window may start at
/// negative times. Throws ResourceError beyond 1e8 steps.
WienerPath sample_wiener(std::uint64_t seed, double t0, double t1, double dt);

/// FNV-1a over the increment bytes; equal checksums identify byte-identical
/// paths across experiment arms.
std::uint64_t path_checksum(const WienerPath& path);

/// Colored noise: exact update zeta_{n+1} = e^{-dt/delta} zeta_n + xi_n with
/// xi_n = dW_n * sqrt((1 - e^{-2dt/delta})/(2 delta dt)), so zeta and the
/// white-noise processes ride the same path. The start value is drawn from
/// the stationary law N(0, 1/(2 delta)), keyed by the window's absolute
/// index. The overload with zeta0 starts from a given value instead.
std::vector<double> colored_noise(const WienerPath& path, double delta);
std::vector<double> colored_noise(const WienerPath& path, double delta, double zeta0);

/// Smoothed process dy/dt = -y + zeta: exponential update with the closed
/// form for linearly interpolated zeta, exact for affine input. zeta must
/// have one sample per path node (steps + 1 values).
std::vector<double> y_process(const std::vector<double>& zeta, double dt, double y0 = 0.0);

/// Ornstein-Uhlenbeck dz = -z dt + dW: exact update driven by the path's own
/// increments, z_{n+1} = e^{-dt} z_n + dW_n sqrt((1 - e^{-2dt})/(2dt)).
std::vector<double> z_process(const WienerPath& path, double z0 = 0.0);

/// All derived processes on one window, stationarity reached by integrating
/// a discarded spin-up of 10*max(1, delta) time units before t0 (zeta starts
/// stationary; y and z start at 0 at the spin-up head).
struct NoiseSeries {
    double t0 = 0.0, dt = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> dw;    // increments over [t0, t1]
    std::vector<double> zeta;  // node values, steps + 1 entries
    std::vector<double> y;
    std::vector<double> z;

    double time_at(std::size_t n) const;
    /// Linear interpolation of a node series at time t (clamped to the window).
    double interp(const std::vector<double>& series, double t) const;
};

NoiseSeries make_noise_series(std::uint64_t seed, double t0, double t1, double dt, double delta);

/// Time-average of |x|^m over the sample window [i0, i1).
double moment_estimate(const std::vector<double>& series, double m, std::size_t i0,
                       std::size_t i1);

struct SupDiffRow {
    double delta;
    double sup_diff;
    double t_at_sup;
};

/// sup |y_delta - z| per delta, sharing one path. The first 10 time units of
/// the window are the common spin-up and are excluded from the comparison.
std::vector<SupDiffRow> noise_convergence(const WienerPath& path,
                                          const std::vector<double>& deltas);

/// CSV with columns t,zeta,y,z at 17 significant digits.
void write_noise_csv(const NoiseSeries& series, const std::string& path);

}  // namespace ans
