#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "haps/channel.hpp"
#include "oracles.hpp"

using namespace haps;

static const channel::LinkBudgetParams kLink;
static const channel::ArrayPattern kPattern;
static const channel::CellTopology kTopo;

TEST_CASE("Rician sampling normalization and shape") {
    SUBCASE("rejects negative shape") {
        Rng rng(1);
        CHECK_THROWS_AS(channel::sample_rician_power(-0.5, rng), std::domain_error);
    }
    SUBCASE("huge K collapses to the deterministic LOS power") {
        Rng rng(2);
        for (int i = 0; i < 100; ++i)
            CHECK(channel::sample_rician_power(1e12, rng) == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("unit mean power at K = 0 (Rayleigh) and K = 4.5") {
        for (double k : {0.0, 4.5}) {
            Rng rng(3);
            double mean = 0.0;
            const int n = 100000;
            for (int i = 0; i < n; ++i) mean += channel::sample_rician_power(k, rng);
            mean /= n;
            CHECK(std::fabs(mean - 1.0) < 0.02);
        }
    }
    SUBCASE("moment estimator recovers the table K factor") {
        Rng rng(4);
        std::vector<double> powers(100000);
        for (auto& p : powers) p = channel::sample_rician_power(4.5, rng);
        const double k_hat = oracles::estimate_rician_k(powers);
        CHECK(std::fabs(k_hat - 4.5) / 4.5 < 0.05);
    }
}

TEST_CASE("path loss") {
    SUBCASE("boresight value and the exact sine ratio") {
        const double l90 = channel::path_loss(kLink, 18000.0, std::numbers::pi / 2);
        CHECK(l90 == doctest::Approx(0.27301125989).epsilon(1e-9));
        const double l30 = channel::path_loss(kLink, 18000.0, std::numbers::pi / 6);
        CHECK(l30 / l90 == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("small-angle halving roughly quadruples the loss") {
        const double psi = 0.05;
        const double ratio = channel::path_loss(kLink, 18000.0, psi) /
                             channel::path_loss(kLink, 18000.0, 2.0 * psi);
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
    }
    SUBCASE("monotone in altitude and elevation") {
        double prev = channel::path_loss(kLink, 12000.0, 0.5);
        for (double h = 13000.0; h <= 24000.0; h += 1000.0) {
            const double l = channel::path_loss(kLink, h, 0.5);
            CHECK(l > prev);
            prev = l;
        }
        prev = channel::path_loss(kLink, 18000.0, 0.05);
        for (double psi = 0.1; psi <= std::numbers::pi / 2; psi += 0.05) {
            const double l = channel::path_loss(kLink, 18000.0, psi);
            CHECK(l < prev);
            prev = l;
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(channel::path_loss(kLink, 18000.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(channel::path_loss(kLink, 18000.0, -0.2), std::domain_error);
        CHECK_THROWS_AS(channel::path_loss(kLink, 0.0, 0.5), std::domain_error);
    }
}

TEST_CASE("sectorial array gain") {
    CHECK(channel::array_gain(kPattern, 0.0) == doctest::Approx(2.0));
    // Boundary is inclusive for the main lobe.
    CHECK(channel::array_gain(kPattern, kPattern.half_beamwidth_rad) == doctest::Approx(2.0));
    CHECK(channel::array_gain(kPattern, -kPattern.half_beamwidth_rad) == doctest::Approx(2.0));
    CHECK(channel::array_gain(kPattern, 2.0 * kPattern.half_beamwidth_rad) ==
          doctest::Approx(0.5));
}

TEST_CASE("topology neighbor sets") {
    CHECK(kTopo.neighbors(0) == std::vector<int>{1, 2, 3, 4, 5, 6});
    for (int m = 1; m <= 6; ++m) {
        const auto nb = kTopo.neighbors(m);
        REQUIRE(nb.size() == 3);
        CHECK(nb[0] == 0);  // every edge cell hears the centre
        CHECK(nb[1] != m);
        CHECK(nb[2] != m);
    }
    CHECK(kTopo.neighbors(1) == std::vector<int>{0, 6, 2});
    CHECK(kTopo.neighbors(6) == std::vector<int>{0, 5, 1});
}

TEST_CASE("composite coefficient hand fixture") {
    // All fades one, equal cell powers: A = (m_b/M_b)^2 |J| + L / (rho M_b^2).
    channel::UserDraw d;
    d.elevation_rad = std::numbers::pi / 4;
    d.serving_fade = 1.0;
    d.interferer_fades = {1.0, 1.0, 1.0};
    const std::vector<double> powers(7, 100.0);
    const double a =
        channel::composite_coefficient(d, kTopo, 1, kPattern, kLink, 18000.0, powers);
    const double expected = 0.25 / 4.0 * 3.0 +
                            channel::path_loss(kLink, 18000.0, d.elevation_rad) /
                                (100.0 / kLink.noise_power * 4.0);
    CHECK(a == doctest::Approx(expected).epsilon(1e-12));
    CHECK(a == doctest::Approx(0.188865).epsilon(1e-5));
}

TEST_CASE("ideal channel sends the composite to zero") {
    channel::UserDraw d;
    d.elevation_rad = std::numbers::pi / 2;
    d.serving_fade = 1.0;
    d.interferer_fades = {0.0, 0.0, 0.0};
    std::vector<double> powers(7, 1e12);  // interference-free, huge SNR
    for (auto& p : d.interferer_fades) p = 0.0;
    const double a =
        channel::composite_coefficient(d, kTopo, 1, kPattern, kLink, 18000.0, powers);
    CHECK(a < 1e-12);
}

TEST_CASE("build_links ordering and determinism") {
    const std::vector<double> powers(7, 120.0);
    const auto links_a = channel::build_links(kTopo, kPattern, kLink, 18000.0, powers, 99);
    const auto links_b = channel::build_links(kTopo, kPattern, kLink, 18000.0, powers, 99);
    const auto links_c = channel::build_links(kTopo, kPattern, kLink, 18000.0, powers, 100);
    REQUIRE(links_a.size() == 7);
    bool any_diff = false;
    for (int m = 0; m < 7; ++m) {
        REQUIRE(links_a[m].size() == 8);
        for (int l = 0; l < 8; ++l) {
            // Sorted by decreasing composite.
            if (l > 0) CHECK(links_a[m][l].composite <= links_a[m][l - 1].composite);
            CHECK(links_a[m][l].composite == links_b[m][l].composite);
            CHECK(links_a[m][l].elevation_rad == links_b[m][l].elevation_rad);
            if (links_a[m][l].composite != links_c[m][l].composite) any_diff = true;
            // Elevation bands per cell type.
            if (m == 0) {
                CHECK(links_a[m][l].elevation_rad >= kTopo.psi_center_rad);
                CHECK(links_a[m][l].elevation_rad <= std::numbers::pi / 2);
            } else {
                CHECK(links_a[m][l].elevation_rad >= kTopo.psi_edge_rad);
                CHECK(links_a[m][l].elevation_rad <= kTopo.psi_center_rad);
            }
            CHECK(links_a[m][l].serving_fade > 0.0);
        }
    }
    CHECK(any_diff);  // a different seed actually changes the realization
}

TEST_CASE("compose_links rejects bad input") {
    Rng rng(7);
    auto draws = channel::draw_cells(kTopo, rng);
    const std::vector<double> powers(7, 100.0);
    draws[3].clear();
    CHECK_THROWS_AS(
        channel::compose_links(draws, kTopo, kPattern, kLink, 18000.0, powers),
        std::domain_error);
}

TEST_CASE("parameter validation") {
    channel::ArrayPattern bad = kPattern;
    bad.backlobe_gain = 3.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    channel::CellTopology badt = kTopo;
    badt.psi_edge_rad = 1.0;
    CHECK_THROWS_AS(badt.validate(), std::invalid_argument);
    channel::LinkBudgetParams badl = kLink;
    badl.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(badl.validate(), std::invalid_argument);
}
