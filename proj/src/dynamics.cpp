#include "ans/dynamics.hpp"

#include <cmath>
#include <string>

#include "ans/errors.hpp"
#include "ans/operators.hpp"

namespace ans {

SpectralField rhs_deterministic(const SpectralField& u, const SimParams& p) {
    SpectralField out = nonlinear_term(u);
    out *= -1.0;
    out += p.f;
    out.axpy(-p.nu, apply_A1(u));
    return out;
}

SpectralField rhs_colored_v(const SpectralField& v, double y, const SimParams& p) {
    SpectralField w = v;
    w.axpy(y, p.h);
    SpectralField out = nonlinear_term(w);
    out *= -1.0;
    out += p.f;
    out.axpy(-p.nu, apply_A1(v));
    if (y != 0.0) {
        out.axpy(-p.nu * y, apply_A1(p.h));
        out.axpy(y, p.h);
    }
    return out;
}

SpectralField rhs_white_v(const SpectralField& v, double z, const SimParams& p) {
    return rhs_colored_v(v, z, p);
}

SpectralField recover_u(const SpectralField& v, double scalar, const SpectralField& h) {
    SpectralField u = v;
    u.axpy(scalar, h);
    return u;
}

SpectralField step_euler_maruyama(const SpectralField& u, double dW, double dt,
                                  const SimParams& p) {
    SpectralField next = u;
    next.axpy(dt, rhs_deterministic(u, p));
    next.axpy(dW, p.h);
    return leray_project(next);
}

namespace {

bool field_is_zero(const SpectralField& f) {
    for (const auto& c : f.data)
        if (c != cplx(0.0, 0.0)) return false;
    return true;
}

}  // namespace

Stepper::Stepper(const EvolutionSpec& spec)
    : spec_(spec), a1h_(spec.params.grid), w_(spec.params.grid), k1_(spec.params.grid),
      k2_(spec.params.grid) {
    const Grid& g = *spec_.params.grid;
    const SimParams& p = spec_.params;
    efac_.resize(g.size);
    for (std::size_t i = 0; i < g.size; ++i) efac_[i] = std::exp(-p.nu * g.mu[i] * p.dt);
    has_h_ = !field_is_zero(p.h);
    if (has_h_) a1h_ = apply_A1(p.h);
    if (spec_.kind != EvolKind::Deterministic) {
        if (!spec_.noise)
            throw ConfigError("a noise series is required for this evolution kind");
        if (std::abs(spec_.noise->dt - p.dt) > 1e-12 * p.dt)
            throw ConfigError("noise series step must match time.dt");
    }
}

double Stepper::scalar_at(double t) const {
    switch (spec_.kind) {
        case EvolKind::ColoredV: return spec_.noise->interp(spec_.noise->y, t);
        case EvolKind::WhiteV: return spec_.noise->interp(spec_.noise->z, t);
        default: return 0.0;
    }
}

void Stepper::apply_factor(SpectralField& v) const {
    const std::size_t n = spec_.params.grid->size;
    kernels::mul_real(v.comp(0), efac_.data(), n);
    kernels::mul_real(v.comp(1), efac_.data(), n);
}

void Stepper::rhs_nonstiff(const SpectralField& v, double s, SpectralField& out) {
    const SimParams& p = spec_.params;
    if (has_h_ && s != 0.0) {
        w_ = v;
        w_.axpy(s, p.h);
        out = nonlinear_term(w_);
    } else {
        out = nonlinear_term(v);
    }
    out *= -1.0;
    out += p.f;
    if (has_h_ && s != 0.0) {
        out.axpy(-p.nu * s, a1h_);
        out.axpy(s, p.h);
    }
}

double Stepper::work_rate(const SpectralField& v, double t) const {
    const SimParams& p = spec_.params;
    if (spec_.kind == EvolKind::DirectSde) return 0.0;
    double w = 2.0 * inner_product(p.f, v);
    double s = scalar_at(t);
    if (has_h_ && s != 0.0) {
        w += -2.0 * p.nu * s * inner_product(a1h_, v);
        w += 2.0 * s * inner_product(p.h, v);
        // the advective term works only through the coupling:
        // <B(v + s h), v> = -s <B(v + s h), h>
        SpectralField u = v;
        u.axpy(s, p.h);
        w += 2.0 * s * inner_product(nonlinear_term(u), p.h);
    }
    return w;
}

void Stepper::check_state(const SpectralField& v, double t) {
    const SimParams& p = spec_.params;
    ++step_count_;
    if (step_count_ % 100 == 0) {
        SpectralField u = v;
        double s = scalar_at(t);
        if (has_h_ && s != 0.0) u.axpy(s, p.h);
        double vmax = max_velocity(u);
        last_cfl_ = vmax > 0.0 ? p.dt / (0.5 * p.grid->dx() / vmax) : 0.0;
        if (last_cfl_ > 1.0 && warnings_.size() < 16)
            warnings_.push_back("advective CFL exceeded at t=" + std::to_string(t) +
                                ": dt is " + std::to_string(last_cfl_) +
                                "x the 0.5*dx/max|u| heuristic");
    }
    if (!kernels::all_finite(v.data.data(), v.data.size()))
        throw DivergenceError("state is no longer finite at t=" + std::to_string(t) +
                                  " (last CFL ratio " + std::to_string(last_cfl_) + ")",
                              t);
}

void Stepper::step(SpectralField& v, double t) {
    const SimParams& p = spec_.params;
    if (spec_.kind == EvolKind::DirectSde) {
        const NoiseSeries& ns = *spec_.noise;
        auto idx = static_cast<std::size_t>(std::llround((t - ns.t0) / ns.dt));
        if (idx >= ns.dw.size())
            throw ConfigError("noise series does not cover the integration window");
        v = step_euler_maruyama(v, ns.dw[idx], p.dt, p);
        check_state(v, t + p.dt);
        return;
    }
    rhs_nonstiff(v, scalar_at(t), k1_);
    // predictor: v_p = E (v + dt k1); corrector uses the stage at t + dt
    w_ = v;
    w_.axpy(p.dt, k1_);
    apply_factor(w_);
    rhs_nonstiff(w_, scalar_at(t + p.dt), k2_);
    apply_factor(v);
    apply_factor(k1_);
    v.axpy(0.5 * p.dt, k1_);
    v.axpy(0.5 * p.dt, k2_);
    check_state(v, t + p.dt);
}

Trajectory simulate(const EvolutionSpec& spec, const SpectralField& v0, double t_start) {
    const SimParams& p = spec.params;
    if (!(p.dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (p.T < 0.0) throw ConfigError("time.T must be nonnegative");

    if (spec.kind == EvolKind::ColoredV && !spec.force_gate) {
        auto rep = check_assumption(p.h, p.nu, p.delta);
        if (!rep.pass)
            throw AssumptionError(
                "noise intensity is inadmissible: ||grad h||_Linf / bound = " +
                    std::to_string(rep.ratio) + " (needs < 1); rerun with --force to override",
                rep.ratio);
    }

    Stepper stepper(spec);
    SpectralField v = v0;
    auto steps = static_cast<long long>(std::llround(p.T / p.dt));
    long long record_stride =
        std::max(1ll, static_cast<long long>(std::llround(p.record_every / p.dt)));
    long long snap_stride =
        p.snapshot_every > 0.0
            ? std::max(1ll, static_cast<long long>(std::llround(p.snapshot_every / p.dt)))
            : 0;

    Trajectory traj;
    DiagnosticsRecord rec = record_norms(v, t_start, stepper.scalar_at(t_start));
    rec.work_rate = stepper.work_rate(v, t_start);
    traj.records.push_back(rec);
    if (snap_stride > 0) traj.snapshots.emplace_back(t_start, v);

    DiagnosticsRecord prev = rec;
    double residual = 0.0;
    for (long long n = 0; n < steps; ++n) {
        double t = t_start + static_cast<double>(n) * p.dt;
        stepper.step(v, t);
        bool at_end = (n + 1 == steps);
        if ((n + 1) % record_stride == 0 || at_end) {
            double tn = t_start + static_cast<double>(n + 1) * p.dt;
            DiagnosticsRecord cur = record_norms(v, tn, stepper.scalar_at(tn));
            cur.work_rate = stepper.work_rate(v, tn);
            residual += energy_residual_update(prev, cur, p.nu);
            cur.energy_residual = residual;
            traj.records.push_back(cur);
            prev = cur;
        }
        if (snap_stride > 0 && ((n + 1) % snap_stride == 0 || at_end))
            traj.snapshots.emplace_back(t_start + static_cast<double>(n + 1) * p.dt, v);
    }
    traj.warnings = stepper.warnings();
    traj.final_state = v;
    return traj;
}

}  // namespace ans
