#include "ans/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ans/errors.hpp"
#include "ans/operators.hpp"

namespace ans {

namespace {

std::uint64_t series_checksum(const NoiseSeries& ns) {
    return bytes_checksum(ns.dw.data(), ns.dw.size() * sizeof(double));
}

std::string format_tag(std::uint64_t seed, double t_pb, EvolKind kind, double delta) {
    char buf[128];
    switch (kind) {
        case EvolKind::ColoredV:
            std::snprintf(buf, sizeof buf, "seed=%llu t_pb=%g delta=%g",
                          static_cast<unsigned long long>(seed), t_pb, delta);
            break;
        case EvolKind::WhiteV:
            std::snprintf(buf, sizeof buf, "seed=%llu t_pb=%g white",
                          static_cast<unsigned long long>(seed), t_pb);
            break;
        default:
            std::snprintf(buf, sizeof buf, "seed=%llu t_pb=%g deterministic",
                          static_cast<unsigned long long>(seed), t_pb);
            break;
    }
    return buf;
}

/// Least-squares line y = a + b x; returns {slope, r2}. A flat response or a
/// single point fits slope 0 with r2 = 1.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return {0.0, 1.0};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (syy == 0.0) return {0.0, 1.0};
    if (sxx == 0.0) throw ConfigError("epsilon ladder rungs must be distinct");
    double slope = sxy / sxx;
    double ss_res = syy - slope * sxy;
    double r2 = 1.0 - ss_res / syy;
    return {slope, r2};
}

}  // namespace

std::uint64_t bytes_checksum(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

double smoothing_ratio(const EvolutionSpec& spec, const SpectralField& v0, double eps,
                       const SpectralField& direction, double T, int s_out) {
    if (!(eps > 0.0)) throw ConfigError("perturbation size must be positive");
    if (T < 0.0) throw ConfigError("horizon must be nonnegative");
    const double dn = sobolev_norm(direction, 0.0);
    if (!(dn > 0.0)) throw ConfigError("perturbation direction must be nonzero");

    EvolutionSpec run = spec;
    run.params.T = T;
    run.params.snapshot_every = 0.0;

    SpectralField shifted = v0;
    shifted.axpy(eps / dn, direction);

    Trajectory base = simulate(run, v0);
    Trajectory pert = simulate(run, shifted);
    SpectralField diff = *pert.final_state - *base.final_state;
    const double d = sobolev_norm(diff, static_cast<double>(s_out));
    return (d * d) / (eps * eps);
}

ConvergenceResult delta_convergence(const SimParams& base, const SpectralField& u0,
                                    std::uint64_t seed, const std::vector<double>& deltas,
                                    double T, bool control_row) {
    if (deltas.empty()) throw ConfigError("correlation-time ladder must not be empty");
    if (T < 0.0) throw ConfigError("horizon must be nonnegative");

    SimParams p = base;
    p.T = T;
    p.seed = seed;
    p.snapshot_every = 0.0;

    ConvergenceResult out;

    auto white = std::make_shared<NoiseSeries>(make_noise_series(seed, 0.0, T, p.dt, 1.0));
    out.path_checksum = series_checksum(*white);

    EvolutionSpec wspec(p);
    wspec.kind = EvolKind::WhiteV;
    wspec.noise = white;
    SpectralField vw = u0;
    vw.axpy(-white->z.front(), p.h);
    Trajectory wrun = simulate(wspec, vw);
    SpectralField uw = recover_u(*wrun.final_state, white->z.back(), p.h);

    for (double d : deltas) {
        SimParams pc = p;
        pc.delta = d;
        auto ns = std::make_shared<NoiseSeries>(make_noise_series(seed, 0.0, T, p.dt, d));
        if (series_checksum(*ns) != out.path_checksum)
            throw InvariantError("arms of the comparison are not on one path");

        ConvergenceRow row;
        row.delta = d;
        row.T = T;
        row.seed = seed;
        row.gated = !check_assumption(pc.h, pc.nu, d).pass;

        EvolutionSpec cspec(pc);
        cspec.kind = EvolKind::ColoredV;
        cspec.noise = ns;
        cspec.force_gate = true;

        SpectralField vc = u0;
        vc.axpy(-ns->y.front(), pc.h);
        try {
            Trajectory run = simulate(cspec, vc);
            SpectralField uc = recover_u(*run.final_state, ns->y.back(), pc.h);
            SpectralField diff = uc - uw;
            for (int s = 0; s < 4; ++s) row.err[s] = sobolev_norm(diff, static_cast<double>(s));
            out.rows.push_back(row);
        } catch (const DivergenceError& e) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "delta=%g arm diverged at t=%g, row dropped", d,
                          e.time);
            out.warnings.emplace_back(buf);
        }
    }

    if (control_row) {
        auto ctrl = std::make_shared<NoiseSeries>(*white);
        ctrl->y = ctrl->z;

        SimParams pc = p;
        pc.delta = 1.0;
        EvolutionSpec cspec(pc);
        cspec.kind = EvolKind::ColoredV;
        cspec.noise = ctrl;
        cspec.force_gate = true;

        ConvergenceRow row;
        row.delta = 0.0;
        row.T = T;
        row.seed = seed;
        SpectralField vc = u0;
        vc.axpy(-ctrl->y.front(), pc.h);
        Trajectory run = simulate(cspec, vc);
        SpectralField diff = recover_u(*run.final_state, ctrl->y.back(), pc.h) - uw;
        for (int s = 0; s < 4; ++s) row.err[s] = sobolev_norm(diff, static_cast<double>(s));
        out.rows.push_back(row);
    }
    return out;
}

std::vector<SpectralField> make_cloud(std::shared_ptr<const Grid> g, int M, std::uint64_t seed) {
    if (M < 1) throw ConfigError("cloud size must be positive");
    std::vector<SpectralField> cloud;
    cloud.reserve(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        std::uint64_t member_seed =
            seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(m) + 1));
        cloud.push_back(make_random_field(g, 4, 1.0, member_seed));
    }
    return cloud;
}

EnsembleState pullback_ensemble(const SimParams& base, std::uint64_t seed,
                                const std::vector<SpectralField>& cloud, double t_pb,
                                EvolKind kind, double delta) {
    if (cloud.empty()) throw ConfigError("pullback needs a nonempty initial cloud");
    if (t_pb < 0.0) throw ConfigError("pullback depth must be nonnegative");
    if (kind == EvolKind::DirectSde)
        throw ConfigError("pullback mode must be colored, white, or deterministic");

    SimParams p = base;
    p.T = t_pb;
    p.seed = seed;
    p.record_every = t_pb > 0.0 ? t_pb : p.record_every;
    p.snapshot_every = 0.0;
    if (kind == EvolKind::ColoredV) p.delta = delta;

    EnsembleState out;
    out.tag = format_tag(seed, t_pb, kind, delta);

    EvolutionSpec spec(p);
    spec.kind = kind;
    spec.force_gate = true;

    const std::vector<double>* scalar = nullptr;
    if (kind != EvolKind::Deterministic) {
        auto ns = std::make_shared<NoiseSeries>(make_noise_series(
            seed, -t_pb, 0.0, p.dt, kind == EvolKind::ColoredV ? delta : 1.0));
        out.path_checksum = series_checksum(*ns);
        spec.noise = ns;
        scalar = kind == EvolKind::ColoredV ? &spec.noise->y : &spec.noise->z;
    }
    if (kind == EvolKind::ColoredV) {
        AssumptionReport rep = check_assumption(p.h, p.nu, delta);
        if (!rep.pass) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "admissibility ratio %.3g exceeds 1 at delta=%g, proceeding", rep.ratio,
                          delta);
            out.warnings.emplace_back(buf);
        }
    }

    for (std::size_t m = 0; m < cloud.size(); ++m) {
        SpectralField v0 = cloud[m];
        if (scalar) v0.axpy(-scalar->front(), p.h);
        try {
            Trajectory run = simulate(spec, v0, -t_pb);
            if (scalar)
                out.members.push_back(recover_u(*run.final_state, scalar->back(), p.h));
            else
                out.members.push_back(std::move(*run.final_state));
        } catch (const DivergenceError& e) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "member %zu diverged at t=%g, dropped", m, e.time);
            out.warnings.emplace_back(buf);
        }
    }
    if (out.members.empty())
        throw DivergenceError("every pullback member diverged", 0.0);
    return out;
}

double ensemble_diameter(const EnsembleState& e, double s) {
    if (e.members.empty()) throw ConfigError("diameter of an empty ensemble");
    double best = 0.0;
    for (std::size_t i = 0; i < e.members.size(); ++i)
        for (std::size_t j = i + 1; j < e.members.size(); ++j)
            best = std::max(best, sobolev_norm(e.members[i] - e.members[j], s));
    return best;
}

double hausdorff_semidist(const EnsembleState& a, const EnsembleState& b, double s) {
    if (a.members.empty() || b.members.empty())
        throw ConfigError("Hausdorff semi-distance of an empty ensemble");
    double sup = 0.0;
    for (const SpectralField& x : a.members) {
        double inf = std::numeric_limits<double>::infinity();
        for (const SpectralField& y : b.members)
            inf = std::min(inf, sobolev_norm(x - y, s));
        sup = std::max(sup, inf);
    }
    return sup;
}

BoxDimResult box_counting_dim(const EnsembleState& e, double s,
                              const std::vector<double>& eps_ladder) {
    if (e.members.empty()) throw ConfigError("box dimension of an empty ensemble");
    if (eps_ladder.size() < 2) throw ConfigError("epsilon ladder needs at least two rungs");
    for (double eps : eps_ladder)
        if (!(eps > 0.0)) throw ConfigError("epsilon rungs must be positive");

    const std::size_t M = e.members.size();
    std::vector<double> dist(M * M, 0.0);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j) {
            double d = sobolev_norm(e.members[i] - e.members[j], s);
            dist[i * M + j] = d;
            dist[j * M + i] = d;
        }

    // Farthest-point greedy net seeded at member 0. The insertion radii are
    // non-increasing, so the net needed to cover at scale eps is the prefix
    // with radii above eps.
    std::vector<double> radii;
    radii.reserve(M > 0 ? M - 1 : 0);
    std::vector<double> mind(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(M));
    mind[0] = 0.0;
    std::vector<char> used(M, 0);
    used[0] = 1;
    for (std::size_t t = 1; t < M; ++t) {
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t j = 0; j < M; ++j)
            if (!used[j] && mind[j] > best) {
                best = mind[j];
                pick = j;
            }
        radii.push_back(best);
        used[pick] = 1;
        for (std::size_t j = 0; j < M; ++j)
            if (!used[j]) mind[j] = std::min(mind[j], dist[pick * M + j]);
    }

    BoxDimResult out;
    out.eps = eps_ladder;
    std::vector<double> lx, ly;
    for (double eps : eps_ladder) {
        std::size_t count = 1;
        for (double r : radii)
            if (r > eps) ++count;
        out.count.push_back(count);
        lx.push_back(-std::log(eps));
        ly.push_back(std::log(static_cast<double>(count)));
    }
    if (radii.empty() || radii.front() == 0.0) return out;  // degenerate cloud: dimension 0
    auto [slope, r2] = fit_line(lx, ly);
    out.slope = slope;
    out.r2 = r2;
    return out;
}

SemicontinuityResult semicontinuity_curve(const SimParams& base, std::uint64_t seed,
                                          const std::vector<double>& deltas, double t_pb,
                                          int M) {
    if (deltas.empty()) throw ConfigError("correlation-time ladder must not be empty");

    std::vector<SpectralField> cloud = make_cloud(base.grid, M, seed);
    EnsembleState white =
        pullback_ensemble(base, seed, cloud, t_pb, EvolKind::WhiteV, 1.0);

    SemicontinuityResult out;
    out.path_checksum = white.path_checksum;
    out.warnings = white.warnings;

    for (double d : deltas) {
        EnsembleState colored = pullback_ensemble(base, seed, cloud, t_pb, EvolKind::ColoredV, d);
        if (colored.path_checksum != white.path_checksum)
            throw InvariantError("arms of the comparison are not on one path");
        for (const std::string& w : colored.warnings) out.warnings.push_back(w);
        out.rows.push_back({d, hausdorff_semidist(colored, white, 0.0)});
    }
    return out;
}

}  // namespace ans
