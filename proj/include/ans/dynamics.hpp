#pragma once

#include <cstdint>
#include <memory>

#include "ans/diagnostics.hpp"
#include "ans/field.hpp"
#include "ans/noise.hpp"

namespace ans {

struct SimParams {
    explicit SimParams(std::shared_ptr<const Grid> g)
        : grid(std::move(g)), f(grid), h(grid) {}

    std::shared_ptr<const Grid> grid;
    double nu = 1.0;
    double delta = 0.25;
    double dt = 1e-3;
    double T = 1.0;
    double record_every = 0.1;
    double snapshot_every = 0.0;  // 0 disables field snapshots
    std::uint64_t seed = 1;
    SpectralField f;  // forcing
    SpectralField h;  // noise intensity profile
};

/// Which system is integrated:
///   Deterministic — du/dt + nu A1 u + B(u) = f
///   ColoredV      — the y-conjugated random equation (state is v, u = v + h y)
///   WhiteV        — the z-conjugated equation (state is v, u = v + h z)
///   DirectSde     — Euler-Maruyama on the velocity itself, for cross-checks
enum class EvolKind { Deterministic, ColoredV, WhiteV, DirectSde };

struct EvolutionSpec {
    explicit EvolutionSpec(SimParams p) : params(std::move(p)) {}

    EvolKind kind = EvolKind::Deterministic;
    SimParams params;
    std::shared_ptr<const NoiseSeries> noise;  // required unless deterministic
    bool force_gate = false;  // proceed even if the admissibility check fails
};

/// f - nu A1 u - B(u).
SpectralField rhs_deterministic(const SpectralField& u, const SimParams& p);

/// f - nu A1 v - B(v + h y) - nu y A1 h + y h.
SpectralField rhs_colored_v(const SpectralField& v, double y, const SimParams& p);

/// Same functional form with the scalar z.
SpectralField rhs_white_v(const SpectralField& v, double z, const SimParams& p);

/// u = v + scalar * h.
SpectralField recover_u(const SpectralField& v, double scalar, const SpectralField& h);

/// One explicit Euler-Maruyama step: u + dt (f - nu A1 u - B(u)) + dW h,
/// re-projected.
SpectralField step_euler_maruyama(const SpectralField& u, double dW, double dt,
                                  const SimParams& p);

/// Time integrator: the viscous part is applied exactly per mode through the
/// factor e^{-nu mu(k) dt}; everything else advances by Heun's method under
/// that integrating factor. Holds the factor table and workspaces.
class Stepper {
public:
    explicit Stepper(const EvolutionSpec& spec);

    /// Advance by one dt from time t (DirectSde uses the Euler-Maruyama
    /// update instead of the integrating factor).
    void step(SpectralField& v, double t);

    /// Noise scalar entering the equations at time t (0 when deterministic).
    double scalar_at(double t) const;

    /// 2<f + scalar-coupling terms, v>: the work rate entering the energy
    /// balance of the integrated system.
    double work_rate(const SpectralField& v, double t) const;

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    void rhs_nonstiff(const SpectralField& v, double s, SpectralField& out);
    void apply_factor(SpectralField& v) const;
    void check_state(const SpectralField& v, double t);

    const EvolutionSpec& spec_;
    std::vector<double> efac_;
    SpectralField a1h_;
    bool has_h_ = false;
    SpectralField w_, k1_, k2_;
    double last_cfl_ = 0.0;
    long step_count_ = 0;
    std::vector<std::string> warnings_;
};

/// Integrates from t_start over params.T, recording diagnostics every
/// record_every (plus the final time) and accumulating the energy residual.
/// Refuses an inadmissible colored run unless spec.force_gate is set.
Trajectory simulate(const EvolutionSpec& spec, const SpectralField& v0, double t_start = 0.0);

}  // namespace ans
