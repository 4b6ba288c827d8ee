#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "ans/dynamics.hpp"
#include "ans/errors.hpp"
#include "ans/operators.hpp"
#include "doctest.h"

using namespace ans;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SimParams base_params(std::shared_ptr<const Grid> g) {
    SimParams p(std::move(g));
    p.nu = 1.0;
    p.dt = 1e-2;
    p.T = 1.0;
    p.record_every = 0.25;
    return p;
}

}  // namespace

TEST_CASE("viscous decay is exact per mode") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.nu = 0.7;
    const cplx c0(0.5, 0.2);
    SpectralField u0 = make_mode_field(g, {{1, 2, c0.real(), c0.imag()}});

    EvolutionSpec spec(p);
    Trajectory traj = simulate(spec, u0);

    REQUIRE(traj.records.size() == 5);
    CHECK(traj.records[1].t == doctest::Approx(0.25));
    CHECK(traj.records.back().t == doctest::Approx(1.0));
    CHECK(traj.records.back().noise_scalar == 0.0);
    CHECK(traj.warnings.empty());

    const double decay = std::exp(-0.7 * (17.0 / 5.0) * 1.0);
    REQUIRE(traj.final_state.has_value());
    const SpectralField& uT = *traj.final_state;
    SpectralField expect = u0;
    expect *= decay;
    CHECK(linf_coeff_diff(uT, expect) < 1e-12);
    CHECK(traj.records.back().h0 ==
          doctest::Approx(decay * traj.records.front().h0).epsilon(1e-10));
}

TEST_CASE("integrator is second order in time") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.nu = 0.05;
    p.T = 0.5;
    p.f = make_mode_field(g, {{1, 1, 1.0, 0.0}, {2, -1, 0.5, 0.3}});
    SpectralField u0 = make_random_field(g, 4, 1.0, 3);

    auto solve = [&](double dt) {
        SimParams q = p;
        q.dt = dt;
        q.record_every = q.T;
        EvolutionSpec spec(q);
        Trajectory traj = simulate(spec, u0);
        return *traj.final_state;
    };

    SpectralField ref = solve(2.5e-4);
    double e1 = sobolev_norm(solve(4e-3) - ref, 0.0);
    double e2 = sobolev_norm(solve(2e-3) - ref, 0.0);
    double e3 = sobolev_norm(solve(1e-3) - ref, 0.0);
    REQUIRE(e1 > 0.0);
    REQUIRE(e2 > 0.0);
    REQUIRE(e3 > 0.0);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("conjugated right-hand sides") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.nu = 0.8;
    p.f = make_mode_field(g, {{1, 1, 0.6, 0.0}});
    p.h = make_mode_field(g, {{1, 0, 0.2, 0.0}, {2, 1, 0.1, -0.05}});
    SpectralField v = make_random_field(g, 4, 1.2, 13);

    SUBCASE("zero scalar reduces to the deterministic form") {
        CHECK(linf_coeff_diff(rhs_colored_v(v, 0.0, p), rhs_deterministic(v, p)) == 0.0);
    }

    SUBCASE("assembly matches the hand-combined terms") {
        const double y = 0.37;
        SpectralField w = v;
        w.axpy(y, p.h);
        SpectralField expect = p.f - nonlinear_term(w);
        expect.axpy(-p.nu, apply_A1(v));
        expect.axpy(-p.nu * y, apply_A1(p.h));
        expect.axpy(y, p.h);
        CHECK(linf_coeff_diff(rhs_colored_v(v, y, p), expect) < 1e-14);
    }

    SUBCASE("white variant is the same functional form") {
        CHECK(linf_coeff_diff(rhs_white_v(v, 0.9, p), rhs_colored_v(v, 0.9, p)) == 0.0);
    }

    SUBCASE("velocity recovery") {
        SpectralField u = recover_u(v, 2.5, p.h);
        SpectralField expect = v;
        expect.axpy(2.5, p.h);
        CHECK(linf_coeff_diff(u, expect) == 0.0);
    }
}

TEST_CASE("white-conjugated flow tracks the direct SDE on one path") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.nu = 0.3;
    p.dt = 1e-3;
    p.T = 0.5;
    p.record_every = 0.1;
    p.f = make_mode_field(g, {{1, 1, 0.4, 0.0}});
    p.h = make_mode_field(g, {{1, 0, 0.08, 0.0}, {2, -1, 0.05, 0.02}});
    SpectralField u0 = make_random_field(g, 3, 0.5, 5);

    auto ns = std::make_shared<NoiseSeries>(make_noise_series(77, 0.0, p.T, p.dt, 0.5));

    EvolutionSpec white(p);
    white.kind = EvolKind::WhiteV;
    white.noise = ns;
    SpectralField v0 = u0;
    v0.axpy(-ns->z.front(), p.h);
    Trajectory wt = simulate(white, v0);
    SpectralField u_white = recover_u(*wt.final_state, ns->z.back(), p.h);

    EvolutionSpec direct(p);
    direct.kind = EvolKind::DirectSde;
    direct.noise = ns;
    Trajectory dt_traj = simulate(direct, u0);
    const SpectralField& u_direct = *dt_traj.final_state;

    validate_field(u_white, 1e-10);
    validate_field(u_direct, 1e-10);
    double scale = std::max(1.0, sobolev_norm(u_direct, 0.0));
    CHECK(sobolev_norm(u_white - u_direct, 0.0) < 2e-2 * scale);
}

TEST_CASE("noise-intensity gate on the colored system") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.T = 0.05;
    p.delta = 0.25;
    p.h = make_mode_field(g, {{1, 0, 0.25, 0.0}});  // ratio 2/sqrt(pi) > 1
    auto ns = std::make_shared<NoiseSeries>(make_noise_series(3, 0.0, p.T, p.dt, p.delta));
    SpectralField v0 = make_random_field(g, 3, 0.1, 2);

    SUBCASE("refuses an inadmissible colored run") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::ColoredV;
        spec.noise = ns;
        try {
            simulate(spec, v0);
            FAIL("expected AssumptionError");
        } catch (const AssumptionError& e) {
            CHECK(e.ratio == doctest::Approx(1.1283791670955126).epsilon(1e-12));
        }
    }

    SUBCASE("force overrides the gate") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::ColoredV;
        spec.noise = ns;
        spec.force_gate = true;
        CHECK_NOTHROW(simulate(spec, v0));
    }

    SUBCASE("white runs are not gated") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::WhiteV;
        spec.noise = ns;
        CHECK_NOTHROW(simulate(spec, v0));
    }
}

TEST_CASE("noise wiring validation") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.T = 0.2;
    SpectralField v0 = make_random_field(g, 3, 0.1, 2);

    SUBCASE("missing series") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::WhiteV;
        CHECK_THROWS_AS(simulate(spec, v0), ConfigError);
    }

    SUBCASE("step mismatch") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::WhiteV;
        spec.noise = std::make_shared<NoiseSeries>(
            make_noise_series(3, 0.0, 1.0, 2.0 * p.dt, 0.25));
        CHECK_THROWS_AS(simulate(spec, v0), ConfigError);
    }

    SUBCASE("series window too short for the direct scheme") {
        EvolutionSpec spec(p);
        spec.kind = EvolKind::DirectSde;
        spec.noise = std::make_shared<NoiseSeries>(
            make_noise_series(3, 0.0, 0.1, p.dt, 0.25));
        CHECK_THROWS_AS(simulate(spec, v0), ConfigError);
    }
}

TEST_CASE("record and snapshot cadence") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.record_every = 0.3;
    p.snapshot_every = 0.5;
    SpectralField u0 = make_mode_field(g, {{1, 1, 0.3, 0.0}});
    EvolutionSpec spec(p);
    Trajectory traj = simulate(spec, u0);

    REQUIRE(traj.records.size() == 5);
    const double times[] = {0.0, 0.3, 0.6, 0.9, 1.0};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(traj.records[i].t == doctest::Approx(times[i]).epsilon(1e-12));

    REQUIRE(traj.snapshots.size() == 3);
    CHECK(traj.snapshots[1].first == doctest::Approx(0.5));
    CHECK(traj.snapshots[2].first == doctest::Approx(1.0));
    CHECK(linf_coeff_diff(traj.snapshots.back().second, *traj.final_state) == 0.0);
}

TEST_CASE("energy balance closes at recording resolution") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.dt = 1e-3;
    p.T = 0.2;
    p.record_every = p.dt;
    p.f = make_mode_field(g, {{1, 1, 1.0, 0.0}});
    SpectralField u0 = make_random_field(g, 4, 1.0, 9);

    auto residual_at = [&](double dt) {
        SimParams q = p;
        q.dt = dt;
        q.record_every = dt;
        EvolutionSpec spec(q);
        Trajectory traj = simulate(spec, u0);
        double scale = std::max(dissipated_energy(traj, q.nu), 1e-12);
        return std::abs(traj.records.back().energy_residual) / scale;
    };

    double r1 = residual_at(1e-3);
    double r2 = residual_at(2.5e-4);
    CHECK(r1 < 5e-5);
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.25));  // second-order balance
}

TEST_CASE("blow-up raises a divergence error") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = base_params(g);
    p.nu = 1e-3;
    p.dt = 0.1;
    p.T = 10.0;
    SpectralField u0 = make_random_field(g, 4, 1e8, 1);
    EvolutionSpec spec(p);
    try {
        simulate(spec, u0);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time >= 0.0);
        CHECK(e.time <= 10.0);
    }
}
