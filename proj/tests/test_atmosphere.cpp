#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "haps/atmosphere.hpp"

using namespace haps;

static const atmo::Constants kC;

TEST_CASE("pressure at the layer base altitudes") {
    CHECK(atmo::pressure_at(kC, 11000.0) == doctest::Approx(22632.06));
    // At exactly 20 km the power-law branch applies and returns its base.
    CHECK(atmo::pressure_at(kC, 20000.0) == doctest::Approx(5474.889));
}

TEST_CASE("branch continuity at 20 km") {
    const double p1 = atmo::pressure_first_branch(kC, 20000.0);
    CHECK(p1 == doctest::Approx(5480.159127).epsilon(1e-9));
    CHECK(std::fabs(p1 - kC.p_b2) / kC.p_b2 < 1e-3);
}

TEST_CASE("pressure rejects out-of-range altitudes") {
    CHECK_THROWS_AS(atmo::pressure_at(kC, 10000.0), std::domain_error);
    CHECK_THROWS_AS(atmo::pressure_at(kC, 33000.0), std::domain_error);
    CHECK_THROWS_WITH(atmo::pressure_at(kC, 5000.0),
                      doctest::Contains("11000"));
}

TEST_CASE("temperature profile") {
    CHECK(atmo::temperature_at(kC, 18000.0) == doctest::Approx(216.65));
    CHECK(atmo::temperature_at(kC, 20000.0) == doctest::Approx(216.65));
    CHECK(atmo::temperature_at(kC, 25000.0) == doctest::Approx(221.65));
}

TEST_CASE("density from the ideal gas law") {
    // 22632.06 / (287.052 * 216.65) and 5474.889 / (287.052 * 216.65)
    CHECK(atmo::density_at(kC, 11000.0) == doctest::Approx(0.3639190711).epsilon(1e-8));
    CHECK(atmo::density_at(kC, 20000.0) == doctest::Approx(0.0880351377).epsilon(1e-8));
    const auto s = atmo::sample_at(kC, 18000.0);
    CHECK(s.density == doctest::Approx(s.pressure / (kC.r_sp * s.temperature)));
    CHECK(s.relative_pressure == doctest::Approx(s.pressure / kC.p0));
    CHECK(s.relative_pressure > 0.0);
    CHECK(s.relative_pressure < 1.0);
}

TEST_CASE("polynomial fits reproduce their published samples") {
    CHECK(atmo::density_poly(18.0) == doctest::Approx(0.12044007).epsilon(1e-9));
    CHECK(atmo::pressure_poly(20.0) == doctest::Approx(5488.8).epsilon(1e-9));
}

TEST_CASE("polynomial fits track the exact model") {
    // Spot value from the spec plus a dense band check.
    CHECK(std::fabs(atmo::density_poly(18.0) - atmo::density_at(kC, 18000.0)) /
              atmo::density_at(kC, 18000.0) < 0.03);
    for (double h = 18.0; h <= 24.0; h += 0.05) {
        const double exact_d = atmo::density_at(kC, h * 1000.0);
        const double exact_p = atmo::pressure_at(kC, h * 1000.0);
        CHECK(std::fabs(atmo::density_poly(h) - exact_d) / exact_d < 0.05);
        CHECK(std::fabs(atmo::pressure_poly(h) - exact_p) / exact_p < 0.05);
    }
    CHECK(std::fabs(atmo::density_poly(21.0) - atmo::density_at(kC, 21000.0)) /
              atmo::density_at(kC, 21000.0) < 0.05);
}

TEST_CASE("monotonicity over the model range") {
    double prev_p = atmo::pressure_at(kC, 11000.0);
    double prev_d = atmo::density_at(kC, 11000.0);
    double prev_t = atmo::temperature_at(kC, 11000.0);
    for (double h = 11050.0; h <= 32000.0; h += 50.0) {
        const double p = atmo::pressure_at(kC, h);
        const double d = atmo::density_at(kC, h);
        const double t = atmo::temperature_at(kC, h);
        CHECK(p < prev_p);
        CHECK(d < prev_d);
        CHECK(t >= prev_t);
        prev_p = p;
        prev_d = d;
        prev_t = t;
    }
}

TEST_CASE("constants validation") {
    atmo::Constants bad = kC;
    bad.t_b = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kC;
    bad.h_b1 = 21000.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(kC.validate());
}

TEST_CASE("density model switch") {
    const atmo::DensityModel exact{kC, false};
    const atmo::DensityModel poly{kC, true};
    CHECK(exact(18000.0) == doctest::Approx(0.1207667658).epsilon(1e-8));
    CHECK(poly(18000.0) == doctest::Approx(0.12044007).epsilon(1e-9));
}
