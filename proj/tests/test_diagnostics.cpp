#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ans/diagnostics.hpp"
#include "ans/errors.hpp"
#include "doctest.h"

using namespace ans;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

DiagnosticsRecord synth(double t, double value) {
    DiagnosticsRecord r;
    r.t = t;
    r.h0 = r.h1 = r.h2 = r.h3 = value;
    return r;
}

// value_at(t) drives all four norms; records every 0.5 over [0, t_end]
Trajectory synth_trajectory(double t_end, double (*value_at)(double)) {
    Trajectory traj;
    for (double t = 0.0; t <= t_end + 1e-9; t += 0.5) traj.records.push_back(synth(t, value_at(t)));
    return traj;
}

}  // namespace

TEST_CASE("norm records mirror the operator layer") {
    auto g = make_grid(16, kTwoPi);
    SpectralField u = make_random_field(g, 5, 1.3, 8);
    DiagnosticsRecord r = record_norms(u, 2.5, 0.7);
    CHECK(r.t == 2.5);
    CHECK(r.noise_scalar == 0.7);
    CHECK(r.h0 == sobolev_norm(u, 0.0));
    CHECK(r.h1 == sobolev_norm(u, 1.0));
    CHECK(r.h2 == sobolev_norm(u, 2.0));
    CHECK(r.h3 == sobolev_norm(u, 3.0));
    CHECK(r.dissipation == aniso_dissipation(u));
    CHECK(r.energy_residual == 0.0);
    CHECK(r.work_rate == 0.0);
}

TEST_CASE("energy residual increment is the trapezoid balance") {
    DiagnosticsRecord prev = synth(1.0, 2.0);
    prev.dissipation = 3.0;
    prev.work_rate = 4.0;
    DiagnosticsRecord next = synth(1.5, 1.8);
    next.dissipation = 2.5;
    next.work_rate = 5.0;

    const double nu = 0.9;
    double expect = (1.8 * 1.8 - 2.0 * 2.0) + nu * 0.5 * (3.0 + 2.5) - 0.5 * 0.5 * (4.0 + 5.0);
    CHECK(energy_residual_update(prev, next, nu) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("dissipated energy is twice the viscous trapezoid") {
    Trajectory traj;
    traj.records.push_back(synth(0.0, 1.0));
    traj.records.back().dissipation = 1.0;
    traj.records.push_back(synth(0.5, 1.0));
    traj.records.back().dissipation = 2.0;
    traj.records.push_back(synth(1.0, 1.0));
    traj.records.back().dissipation = 4.0;
    CHECK(dissipated_energy(traj, 2.0) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(dissipated_energy(Trajectory{}, 2.0) == 0.0);
}

TEST_CASE("enstrophy identity check forwards the operator report") {
    auto g = make_grid(16, kTwoPi);
    SpectralField v = make_random_field(g, 5, 1.0, 4);
    EnstrophyReport a = enstrophy_identity_check(v);
    EnstrophyReport b = enstrophy_quantities(v);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.rel_err == b.rel_err);
    CHECK(a.half_a2 == b.half_a2);
}

TEST_CASE("absorbing statistics over a synthetic ensemble") {
    std::vector<Trajectory> ens;
    ens.push_back(synth_trajectory(20.0, [](double t) { return t < 3.0 ? 5.0 : 1.0; }));
    ens.push_back(synth_trajectory(20.0, [](double t) { return t < 6.0 ? 4.0 : 1.0; }));
    // oscillates out of the ball every other record and never settles
    ens.push_back(synth_trajectory(20.0, [](double t) {
        return t - std::floor(t) == 0.0 ? 1.0 : 60.0;
    }));

    AbsorbingReport rep = absorbing_statistics(ens, 0.5);
    CHECK_FALSE(rep.inconclusive);
    for (int s = 0; s < 4; ++s) {
        const AbsorbingEntry& e = rep.by_norm[s];
        CHECK(e.radius == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(e.entry_times.size() == 3);
        CHECK(e.entry_times[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(e.entry_times[1] == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(std::isnan(e.entry_times[2]));
    }

    SUBCASE("short runs are flagged inconclusive") {
        std::vector<Trajectory> small;
        small.push_back(synth_trajectory(2.0, [](double) { return 1.0; }));
        AbsorbingReport r = absorbing_statistics(small);
        CHECK(r.inconclusive);
        CHECK(r.note.find("shorter") != std::string::npos);
    }

    SUBCASE("empty ensembles are flagged") {
        AbsorbingReport r = absorbing_statistics({});
        CHECK(r.inconclusive);
        CHECK(r.note == "no trajectories");
    }
}

TEST_CASE("trajectory CSV round trip") {
    Trajectory traj;
    DiagnosticsRecord r0 = synth(0.0, 1.0 / 3.0);
    r0.h1 = 1.23456789012345678e-7;
    r0.energy_residual = -4.2e-17;
    r0.noise_scalar = 0.25;
    DiagnosticsRecord r1 = synth(0.1, 2.0 / 7.0);
    r1.h3 = 9.876543210987654e12;
    traj.records = {r0, r1};

    const std::string path = "diag_roundtrip_tmp.csv";
    write_trajectory_csv(traj, path);
    Trajectory back = read_trajectory_csv(path);
    std::remove(path.c_str());

    REQUIRE(back.records.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.records[i].t == traj.records[i].t);
        CHECK(back.records[i].h0 == traj.records[i].h0);
        CHECK(back.records[i].h1 == traj.records[i].h1);
        CHECK(back.records[i].h2 == traj.records[i].h2);
        CHECK(back.records[i].h3 == traj.records[i].h3);
        CHECK(back.records[i].energy_residual == traj.records[i].energy_residual);
        CHECK(back.records[i].noise_scalar == traj.records[i].noise_scalar);
        CHECK(back.records[i].dissipation == 0.0);  // not persisted
        CHECK(back.records[i].work_rate == 0.0);
    }
}

TEST_CASE("trajectory CSV rejects damaged input") {
    const std::string path = "diag_damaged_tmp.csv";

    SUBCASE("wrong header") {
        std::ofstream(path) << "time,norm\n1,2\n";
        CHECK_THROWS_AS(read_trajectory_csv(path), InvariantError);
    }

    SUBCASE("malformed row") {
        std::ofstream(path) << "t,h0,h1,h2,h3,energy_residual,noise_scalar\n1,2,three,4,5,6,7\n";
        CHECK_THROWS_AS(read_trajectory_csv(path), InvariantError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_trajectory_csv("does_not_exist_tmp.csv"), ResourceError);
    }

    std::remove(path.c_str());
}
