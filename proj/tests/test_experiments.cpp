#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "ans/errors.hpp"
#include "ans/experiments.hpp"
#include "ans/operators.hpp"
#include "doctest.h"

using namespace ans;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SimParams experiment_params(std::shared_ptr<const Grid> g) {
    SimParams p(std::move(g));
    p.nu = 1.0;
    p.dt = 2e-3;
    p.record_every = 0.5;
    p.f = make_mode_field(p.grid, {{1, 1, 1.0, 0.0}});
    p.f *= 1.0 / sobolev_norm(p.f, 0.0);
    p.h = make_mode_field(p.grid, {{1, 0, 0.05, 0.0}, {2, 1, 0.03, 0.02}});
    return p;
}

// n states along a unit-length segment in a fixed direction
EnsembleState segment_fixture(std::shared_ptr<const Grid> g, int n) {
    SpectralField w = make_mode_field(g, {{1, 0, 1.0, 0.0}});
    w *= 1.0 / sobolev_norm(w, 0.0);
    EnsembleState e;
    for (int i = 0; i < n; ++i) {
        SpectralField m(g);
        m.axpy(static_cast<double>(i) / (n - 1), w);
        e.members.push_back(m);
    }
    return e;
}

std::vector<double> halving_ladder(double top, int r0, int r1) {
    std::vector<double> ladder;
    for (int r = r0; r <= r1; ++r) ladder.push_back(top / std::pow(2.0, r));
    return ladder;
}

}  // namespace

TEST_CASE("byte checksums") {
    const char* abc = "abc";
    CHECK(bytes_checksum(abc, 3) == 16242233503745875709ull);
    CHECK(bytes_checksum(abc, 0) == 1469598103934665603ull);  // offset basis
    CHECK(bytes_checksum(abc, 3) != bytes_checksum("abd", 3));
}

TEST_CASE("paired-path smoothing quotient") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = experiment_params(g);
    EvolutionSpec det(p);
    SpectralField v0 = make_random_field(g, 4, 1.0, 12);
    SpectralField dir = make_random_field(g, 4, 1.0, 7);

    SUBCASE("zero horizon returns the unit quotient") {
        CHECK(smoothing_ratio(det, v0, 1e-4, dir, 0.0, 0) ==
              doctest::Approx(1.0).epsilon(1e-11));
    }

    SUBCASE("direction is normalized before perturbing") {
        double a = smoothing_ratio(det, v0, 1e-4, dir, 0.25, 0);
        SpectralField big = dir;
        big *= 10.0;
        double b = smoothing_ratio(det, v0, 1e-4, big, 0.25, 0);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }

    SUBCASE("dissipative flow contracts in L2 and is stable in epsilon") {
        double r3 = smoothing_ratio(det, v0, 1e-3, dir, 0.5, 0);
        double r4 = smoothing_ratio(det, v0, 1e-4, dir, 0.5, 0);
        CHECK(r3 < 1.0);
        CHECK(r3 == doctest::Approx(r4).epsilon(1e-3));
        double h2 = smoothing_ratio(det, v0, 1e-4, dir, 0.5, 2);
        CHECK(h2 > 0.0);
        CHECK(std::isfinite(h2));
    }

    SUBCASE("input validation") {
        SpectralField zero(g);
        CHECK_THROWS_AS(smoothing_ratio(det, v0, 1e-4, zero, 0.5, 0), ConfigError);
        CHECK_THROWS_AS(smoothing_ratio(det, v0, 0.0, dir, 0.5, 0), ConfigError);
        CHECK_THROWS_AS(smoothing_ratio(det, v0, 1e-4, dir, -1.0, 0), ConfigError);
    }
}

TEST_CASE("correlation-time convergence rows") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = experiment_params(g);
    SpectralField u0 = make_random_field(g, 4, 1.0, 12);

    SUBCASE("errors shrink with delta and the control row vanishes") {
        ConvergenceResult cv = delta_convergence(p, u0, 21, {0.4, 0.05}, 1.0, true);
        REQUIRE(cv.rows.size() == 3);
        CHECK(cv.warnings.empty());
        CHECK(cv.path_checksum != 0);

        const ConvergenceRow& coarse = cv.rows[0];
        const ConvergenceRow& fine = cv.rows[1];
        CHECK(coarse.delta == 0.4);
        CHECK(coarse.T == 1.0);
        CHECK(coarse.seed == 21);
        CHECK_FALSE(coarse.gated);
        CHECK(fine.gated);  // admissibility tightens as delta shrinks
        for (int s = 0; s < 4; ++s) {
            CHECK(coarse.err[s] > 0.0);
            CHECK(fine.err[s] < coarse.err[s]);
        }

        const ConvergenceRow& control = cv.rows[2];
        CHECK(control.delta == 0.0);
        for (int s = 0; s < 4; ++s) CHECK(control.err[s] == 0.0);
    }

    SUBCASE("zero horizon leaves only recovery roundoff") {
        ConvergenceResult cv = delta_convergence(p, u0, 21, {0.4, 0.05}, 0.0);
        for (const ConvergenceRow& r : cv.rows)
            for (int s = 0; s < 4; ++s) CHECK(r.err[s] < 1e-12);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(delta_convergence(p, u0, 21, {}, 1.0), ConfigError);
        CHECK_THROWS_AS(delta_convergence(p, u0, 21, {0.4}, -1.0), ConfigError);
    }
}

TEST_CASE("initial clouds") {
    auto g = make_grid(16, kTwoPi);
    std::vector<SpectralField> cloud = make_cloud(g, 5, 3);
    REQUIRE(cloud.size() == 5);
    for (const SpectralField& m : cloud) {
        CHECK(sobolev_norm(m, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_NOTHROW(validate_field(m));
    }
    std::vector<SpectralField> again = make_cloud(g, 5, 3);
    for (std::size_t i = 0; i < 5; ++i) CHECK(linf_coeff_diff(cloud[i], again[i]) == 0.0);
    CHECK(linf_coeff_diff(cloud[0], cloud[1]) > 1e-3);
    CHECK_THROWS_AS(make_cloud(g, 0, 3), ConfigError);
}

TEST_CASE("pullback ensembles") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = experiment_params(g);
    std::vector<SpectralField> cloud = make_cloud(g, 4, 3);

    SUBCASE("zero depth returns the cloud") {
        EnsembleState e = pullback_ensemble(p, 3, cloud, 0.0, EvolKind::Deterministic, 0.25);
        REQUIRE(e.members.size() == cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i)
            CHECK(linf_coeff_diff(e.members[i], cloud[i]) == 0.0);
    }

    SUBCASE("the unforced deterministic flow collapses the cloud") {
        SimParams q(g);
        q.nu = 1.0;
        q.dt = 5e-3;
        EnsembleState before;
        before.members = cloud;
        EnsembleState after = pullback_ensemble(q, 3, cloud, 6.0, EvolKind::Deterministic, 0.25);
        CHECK(after.tag == "seed=3 t_pb=6 deterministic");
        CHECK(ensemble_diameter(after, 0.0) < 1e-2 * ensemble_diameter(before, 0.0));
    }

    SUBCASE("noisy pullbacks recover velocities on the shared path") {
        EnsembleState e = pullback_ensemble(p, 5, cloud, 1.0, EvolKind::WhiteV, 0.25);
        CHECK(e.tag == "seed=5 t_pb=1 white");
        CHECK(e.path_checksum != 0);
        REQUIRE(e.members.size() == cloud.size());
        for (const SpectralField& m : e.members) CHECK_NOTHROW(validate_field(m, 1e-9));

        EnsembleState c = pullback_ensemble(p, 5, cloud, 1.0, EvolKind::ColoredV, 0.25);
        CHECK(c.tag == "seed=5 t_pb=1 delta=0.25");
        CHECK(c.path_checksum == e.path_checksum);  // same seed, same window
    }

    SUBCASE("an inadmissible correlation time warns and proceeds") {
        EnsembleState e = pullback_ensemble(p, 5, cloud, 0.5, EvolKind::ColoredV, 0.05);
        REQUIRE_FALSE(e.warnings.empty());
        CHECK(e.warnings.front().find("admissibility") != std::string::npos);
        CHECK(e.members.size() == cloud.size());
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(pullback_ensemble(p, 3, cloud, 1.0, EvolKind::DirectSde, 0.25),
                        ConfigError);
        CHECK_THROWS_AS(pullback_ensemble(p, 3, {}, 1.0, EvolKind::WhiteV, 0.25), ConfigError);
        CHECK_THROWS_AS(pullback_ensemble(p, 3, cloud, -1.0, EvolKind::WhiteV, 0.25),
                        ConfigError);
    }
}

TEST_CASE("ensemble geometry") {
    auto g = make_grid(8, kTwoPi);
    SpectralField w = make_mode_field(g, {{1, 0, 1.0, 0.0}});
    w *= 1.0 / sobolev_norm(w, 0.0);

    EnsembleState origin;
    origin.members.emplace_back(g);  // zero field
    EnsembleState pair = origin;
    SpectralField far(g);
    far.axpy(2.0, w);
    pair.members.push_back(far);

    CHECK(ensemble_diameter(origin, 0.0) == 0.0);
    CHECK(ensemble_diameter(pair, 0.0) == doctest::Approx(2.0).epsilon(1e-13));

    CHECK(hausdorff_semidist(origin, pair, 0.0) == 0.0);  // subset direction
    CHECK(hausdorff_semidist(pair, origin, 0.0) == doctest::Approx(2.0).epsilon(1e-13));

    EnsembleState empty;
    CHECK_THROWS_AS(ensemble_diameter(empty, 0.0), ConfigError);
    CHECK_THROWS_AS(hausdorff_semidist(empty, pair, 0.0), ConfigError);
    CHECK_THROWS_AS(hausdorff_semidist(pair, empty, 0.0), ConfigError);
}

TEST_CASE("box-counting dimension") {
    auto g = make_grid(8, kTwoPi);

    SUBCASE("a uniform segment reports dimension one") {
        EnsembleState line = segment_fixture(g, 64);
        double diam = ensemble_diameter(line, 0.0);
        CHECK(diam == doctest::Approx(1.0).epsilon(1e-12));
        BoxDimResult b = box_counting_dim(line, 0.0, halving_ladder(diam, 1, 5));
        CHECK(b.slope == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b.r2 == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(b.count.size() == 5);
        for (std::size_t i = 0; i + 1 < b.count.size(); ++i)
            CHECK(b.count[i + 1] == 2 * b.count[i]);
    }

    SUBCASE("the estimate is scale invariant") {
        EnsembleState line = segment_fixture(g, 64);
        BoxDimResult a = box_counting_dim(line, 0.0, halving_ladder(1.0, 1, 5));
        for (SpectralField& m : line.members) m *= 3.0;
        BoxDimResult b = box_counting_dim(line, 0.0, halving_ladder(3.0, 1, 5));
        CHECK(a.count == b.count);
        CHECK(a.slope == doctest::Approx(b.slope).epsilon(1e-12));
    }

    SUBCASE("degenerate clouds report dimension zero") {
        EnsembleState single;
        single.members.emplace_back(g);
        BoxDimResult a = box_counting_dim(single, 0.0, {0.5, 0.25});
        CHECK(a.slope == 0.0);
        CHECK(a.r2 == 1.0);
        CHECK(a.count == std::vector<std::size_t>{1, 1});

        EnsembleState twins;
        twins.members.emplace_back(g);
        twins.members.emplace_back(g);
        BoxDimResult b = box_counting_dim(twins, 0.0, {0.5, 0.25});
        CHECK(b.slope == 0.0);
    }

    SUBCASE("cover counts grow as the scale shrinks") {
        EnsembleState e;
        e.members = make_cloud(g, 16, 5);
        double diam = ensemble_diameter(e, 0.0);
        BoxDimResult b = box_counting_dim(e, 0.0, halving_ladder(diam, 0, 4));
        for (std::size_t i = 0; i + 1 < b.count.size(); ++i)
            CHECK(b.count[i] <= b.count[i + 1]);
        CHECK(b.count.front() == 1);  // one ball of radius diam covers
    }

    SUBCASE("ladder validation") {
        EnsembleState line = segment_fixture(g, 8);
        CHECK_THROWS_AS(box_counting_dim(line, 0.0, {0.5}), ConfigError);
        CHECK_THROWS_AS(box_counting_dim(line, 0.0, {0.5, 0.0}), ConfigError);
        EnsembleState empty;
        CHECK_THROWS_AS(box_counting_dim(empty, 0.0, {0.5, 0.25}), ConfigError);
    }
}

TEST_CASE("attractor deformation curve") {
    auto g = make_grid(16, kTwoPi);
    SimParams p = experiment_params(g);
    SemicontinuityResult sc = semicontinuity_curve(p, 9, {0.25}, 2.0, 3);
    REQUIRE(sc.rows.size() == 1);
    CHECK(sc.rows[0].delta == 0.25);
    CHECK(sc.rows[0].dist > 0.0);
    CHECK(std::isfinite(sc.rows[0].dist));
    CHECK(sc.path_checksum != 0);
    CHECK_THROWS_AS(semicontinuity_curve(p, 9, {}, 2.0, 3), ConfigError);
}
