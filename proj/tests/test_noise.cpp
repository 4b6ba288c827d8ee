#include <cmath>
#include <cstdint>
#include <vector>

#include "ans/errors.hpp"
#include "ans/noise.hpp"
#include "doctest.h"

using namespace ans;

TEST_CASE("wiener path sampling") {
    SUBCASE("window snapping, indexing, and times") {
        WienerPath p = sample_wiener(5, 0.0, 1.0, 0.01);
        CHECK(p.steps() == 100);
        CHECK(p.base == 0);
        CHECK(p.t0 == 0.0);
        CHECK(p.t1 == doctest::Approx(1.0));
        CHECK(p.time_at(17) == doctest::Approx(0.17));

        WienerPath q = sample_wiener(5, -5.0, 1.0, 0.01);
        CHECK(q.base == -500);
        CHECK(q.steps() == 600);
        CHECK(q.time_at(0) == doctest::Approx(-5.0));
    }

    SUBCASE("increments follow N(0, dt) in bulk") {
        WienerPath p = sample_wiener(3, 0.0, 1000.0, 0.01);
        double mean = 0.0;
        for (double d : p.dw) mean += d;
        mean /= static_cast<double>(p.steps());
        double var = 0.0;
        for (double d : p.dw) var += (d - mean) * (d - mean);
        var /= static_cast<double>(p.steps());
        // 5 sigma on the sample mean of 1e5 increments with variance dt
        CHECK(std::abs(mean) < 5.0 * std::sqrt(0.01 / 1e5));
        CHECK(var / 0.01 == doctest::Approx(1.0).epsilon(0.05));
    }

    SUBCASE("extending the window into the past keeps the overlap bitwise") {
        WienerPath p = sample_wiener(11, 0.0, 1.0, 0.01);
        WienerPath q = sample_wiener(11, -5.0, 1.0, 0.01);
        REQUIRE(q.steps() == p.steps() + 500);
        for (std::size_t n = 0; n < p.steps(); ++n) CHECK(q.dw[500 + n] == p.dw[n]);
    }

    SUBCASE("frozen draw pins the generator") {
        WienerPath p = sample_wiener(1, 0.0, 0.1, 0.01);
        CHECK(p.dw[0] == -0.21806283401975946);
        CHECK(p.dw[9] == 0.20068351056502254);
        CHECK(path_checksum(p) == 10037279819493701086ull);
    }

    SUBCASE("checksums separate paths and windows") {
        WienerPath a = sample_wiener(1, 0.0, 1.0, 0.01);
        CHECK(path_checksum(a) == path_checksum(sample_wiener(1, 0.0, 1.0, 0.01)));
        CHECK(path_checksum(a) != path_checksum(sample_wiener(2, 0.0, 1.0, 0.01)));
        CHECK(path_checksum(a) != path_checksum(sample_wiener(1, -1.0, 1.0, 0.01)));
    }

    SUBCASE("rejects malformed windows") {
        CHECK_THROWS_AS(sample_wiener(1, 0.0, 1.0, 0.0), ConfigError);
        CHECK_THROWS_AS(sample_wiener(1, 1.0, 0.0, 0.01), ConfigError);
        CHECK_THROWS_AS(sample_wiener(1, 0.0, 0.001, 0.01), ConfigError);
        CHECK_THROWS_AS(sample_wiener(1, 0.0, 2e6, 0.01), ResourceError);
    }
}

TEST_CASE("colored noise recurrence") {
    WienerPath p;
    p.seed = 0;
    p.t0 = 0.0;
    p.t1 = 0.02;
    p.dt = 0.01;
    p.base = 0;
    p.dw = {0.003, -0.004};

    SUBCASE("two exact update steps by hand") {
        const double delta = 0.25, zeta0 = 0.2;
        const double E = std::exp(-p.dt / delta);
        const double s = std::sqrt((1.0 - E * E) / (2.0 * delta * p.dt));
        std::vector<double> zeta = colored_noise(p, delta, zeta0);
        REQUIRE(zeta.size() == 3);
        CHECK(zeta[0] == 0.2);
        CHECK(zeta[1] == doctest::Approx(E * 0.2 + s * 0.003).epsilon(1e-15));
        CHECK(zeta[2] == doctest::Approx(E * zeta[1] - s * 0.004).epsilon(1e-15));
    }

    SUBCASE("unit correlation time reduces to the Ornstein-Uhlenbeck process") {
        std::vector<double> z = z_process(p, 0.3);
        std::vector<double> c = colored_noise(p, 1.0, 0.3);
        REQUIRE(z.size() == c.size());
        for (std::size_t n = 0; n < z.size(); ++n)
            CHECK(z[n] == doctest::Approx(c[n]).epsilon(1e-15));
    }

    SUBCASE("stationary start is reproducible and window independent") {
        WienerPath a = sample_wiener(9, 0.0, 1.0, 0.01);
        std::vector<double> z1 = colored_noise(a, 0.1);
        std::vector<double> z2 = colored_noise(a, 0.1);
        CHECK(z1 == z2);
    }

    SUBCASE("correlation time outside (0, 1] is rejected") {
        CHECK_THROWS_AS(colored_noise(p, 0.0), ConfigError);
        CHECK_THROWS_AS(colored_noise(p, -0.5, 0.0), ConfigError);
        CHECK_THROWS_AS(colored_noise(p, 1.5), ConfigError);
    }
}

TEST_CASE("smoothed process is exact for affine forcing") {
    const double dt = 0.05, c0 = 0.7, c1 = -0.3, y0 = 1.1;
    const std::size_t steps = 100;
    std::vector<double> zeta(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) zeta[n] = c0 + c1 * (dt * static_cast<double>(n));
    std::vector<double> y = y_process(zeta, dt, y0);
    for (std::size_t n = 0; n <= steps; ++n) {
        double t = dt * static_cast<double>(n);
        double exact = std::exp(-t) * y0 + c0 * (1.0 - std::exp(-t)) +
                       c1 * (t - 1.0 + std::exp(-t));
        CHECK(y[n] == doctest::Approx(exact).epsilon(1e-13));
    }
    CHECK_THROWS_AS(y_process(std::vector<double>{}, dt, 0.0), ConfigError);
}

TEST_CASE("noise series assembly") {
    const double dt = 0.01;
    NoiseSeries ns = make_noise_series(17, 0.0, 2.0, dt, 0.2);

    SUBCASE("window trim matches a direct sample of the same window") {
        WienerPath p = sample_wiener(17, 0.0, 2.0, dt);
        REQUIRE(ns.dw.size() == p.steps());
        for (std::size_t n = 0; n < p.steps(); ++n) CHECK(ns.dw[n] == p.dw[n]);
        CHECK(ns.zeta.size() == ns.dw.size() + 1);
        CHECK(ns.y.size() == ns.zeta.size());
        CHECK(ns.z.size() == ns.zeta.size());
        CHECK(ns.t0 == 0.0);
        CHECK(ns.time_at(200) == doctest::Approx(2.0));
    }

    SUBCASE("interpolation hits nodes, midpoints, and clamps") {
        CHECK(ns.interp(ns.y, ns.time_at(7)) == doctest::Approx(ns.y[7]).epsilon(1e-12));
        double mid = 0.5 * (ns.y[7] + ns.y[8]);
        CHECK(ns.interp(ns.y, ns.time_at(7) + 0.5 * dt) == doctest::Approx(mid).epsilon(1e-12));
        CHECK(ns.interp(ns.y, -100.0) == ns.y.front());
        CHECK(ns.interp(ns.y, 100.0) == ns.y.back());
    }

    SUBCASE("spin-up leaves the window statistically stationary") {
        NoiseSeries s = make_noise_series(42, 0.0, 2000.0, dt, 0.1);
        std::size_t n = s.zeta.size();
        CHECK(moment_estimate(s.zeta, 2, 0, n) == doctest::Approx(5.0).epsilon(0.05));
        CHECK(moment_estimate(s.zeta, 1, 0, n) ==
              doctest::Approx(1.7841241161527712).epsilon(0.05));
        CHECK(moment_estimate(s.y, 2, 0, n) == doctest::Approx(1.0 / 2.2).epsilon(0.05));
        CHECK(moment_estimate(s.z, 2, 0, n) == doctest::Approx(0.5).epsilon(0.05));
    }

    SUBCASE("moment window validation") {
        CHECK_THROWS_AS(moment_estimate(ns.zeta, 2, 5, 5), ConfigError);
        CHECK_THROWS_AS(moment_estimate(ns.zeta, 2, 0, ns.zeta.size() + 1), ConfigError);
    }

    SUBCASE("correlation time validation") {
        CHECK_THROWS_AS(make_noise_series(1, 0.0, 1.0, dt, 0.0), ConfigError);
        CHECK_THROWS_AS(make_noise_series(1, 0.0, 1.0, dt, 1.25), ConfigError);
    }
}

TEST_CASE("smoothed-to-white convergence on a shared path") {
    WienerPath p = sample_wiener(7, 0.0, 40.0, 0.01);
    std::vector<double> deltas = {0.4, 0.2, 0.1, 0.05};
    std::vector<SupDiffRow> rows = noise_convergence(p, deltas);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].delta == deltas[i]);
        CHECK(rows[i].sup_diff > 0.0);
        CHECK(rows[i].t_at_sup >= 10.0);  // spin-up excluded
        if (i > 0) CHECK(rows[i].sup_diff < rows[i - 1].sup_diff);
    }

    SUBCASE("rejects overlong correlation times and short windows") {
        CHECK_THROWS_AS(noise_convergence(p, {0.6}), ConfigError);
        WienerPath s = sample_wiener(7, 0.0, 5.0, 0.01);
        CHECK_THROWS_AS(noise_convergence(s, {0.1}), ConfigError);
    }
}
