#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ans/field.hpp"
#include "ans/operators.hpp"

namespace ans {

struct DiagnosticsRecord {
    double t = 0.0;
    double h0 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;
    double energy_residual = 0.0;  // running discrete balance, set by the integrator
    double noise_scalar = 0.0;
    // carried for the residual trapezoid; not part of the CSV schema
    double dissipation = 0.0;  // ||d_y v1||^2 + ||d_x v2||^2
    double work_rate = 0.0;    // 2<forcing terms, v> including the h-coupling
};

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, SpectralField>> snapshots;
    std::vector<std::string> warnings;
    std::optional<SpectralField> final_state;
};

/// Sobolev norms H^0..H^3, the anisotropic dissipation, and the noise scalar
/// at time t. Work rate and residual are owned by the integrator.
DiagnosticsRecord record_norms(const SpectralField& state, double t, double noise_scalar);

/// Trapezoidal increment of the discrete energy balance across one record
/// interval: d(h0^2) + 2 nu int(dissipation) dt - int(work_rate) dt. Zero
/// along an exact solution up to quadrature and integrator order.
double energy_residual_update(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                              double nu);

/// Anisotropic enstrophy identity: relative error between the mixed
/// fourth-order integrals and the four second-derivative norms, plus the
/// 0.5||Av||^2 coercivity comparison.
EnstrophyReport enstrophy_identity_check(const SpectralField& v);

/// 2 nu * trapezoid of the dissipation over the whole trajectory.
double dissipated_energy(const Trajectory& traj, double nu);

struct AbsorbingEntry {
    double radius = 0.0;
    std::vector<double> entry_times;  // NaN where a trajectory never settles
};

struct AbsorbingReport {
    AbsorbingEntry by_norm[4];  // H^0..H^3
    bool inconclusive = false;
    std::string note;
};

/// Empirical absorbing-set statistics over an ensemble: the eventual radius
/// is the `radius_quantile` quantile of late-time norms (final quarter of
/// each run); the entry time is the first time a trajectory enters the
/// radius and stays inside for at least one time unit. Runs shorter than 4
/// time units are flagged inconclusive.
AbsorbingReport absorbing_statistics(const std::vector<Trajectory>& trajectories,
                                     double radius_quantile = 0.95);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reads back a file written by write_trajectory_csv (the three auxiliary
/// fields are not persisted and come back zero).
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace ans
