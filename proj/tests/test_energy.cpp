#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "haps/energy.hpp"

using namespace haps;

static const energy::BatteryParams kBat;

TEST_CASE("net power") {
    CHECK(energy::net_power(0.0, 500.0, 100.0) == doctest::Approx(-600.0));
    CHECK(energy::net_power(600.0, 500.0, 100.0) == doctest::Approx(0.0));
    CHECK(energy::net_power(5000.0, 1200.0, 2000.0) == doctest::Approx(1800.0));
}

TEST_CASE("battery step") {
    SUBCASE("zero net power holds the state") {
        CHECK(energy::step_battery(1e6, 0.0, 3600.0, kBat) == doctest::Approx(1e6));
    }
    SUBCASE("charging applies the charge efficiency") {
        // 0.93 * 1000 W * 3600 s = 3.348 MJ
        CHECK(energy::step_battery(0.0, 1000.0, 3600.0, kBat) == doctest::Approx(3.348e6));
    }
    SUBCASE("discharging applies the discharge efficiency") {
        CHECK(energy::step_battery(10e6, -1000.0, 3600.0, kBat) ==
              doctest::Approx(10e6 - 0.97 * 3.6e6));
    }
    SUBCASE("efficiency switch sits at the charge threshold") {
        energy::BatteryParams p = kBat;
        p.charge_threshold_w = 50.0;
        // Just below the threshold counts as discharge.
        CHECK(energy::step_battery(10e6, 49.0, 3600.0, p) ==
              doctest::Approx(10e6 + 0.97 * 49.0 * 3600.0));
        CHECK(energy::step_battery(10e6, 51.0, 3600.0, p) ==
              doctest::Approx(10e6 + 0.93 * 51.0 * 3600.0));
    }
    SUBCASE("deficit clamps at empty and flags") {
        std::uint8_t flags = 0;
        CHECK(energy::step_battery(1e6, -1000.0, 3600.0, kBat, &flags) == 0.0);
        CHECK((flags & energy::kFlagDeficit));
    }
    SUBCASE("saturation clamps at capacity and flags") {
        std::uint8_t flags = 0;
        energy::BatteryParams small = kBat;
        small.capacity_j = 2e6;
        CHECK(energy::step_battery(1.5e6, 1000.0, 3600.0, small, &flags) == 2e6);
        CHECK((flags & energy::kFlagSaturated));
    }
    SUBCASE("invalid state throws") {
        CHECK_THROWS_AS(energy::step_battery(-1.0, 0.0, 3600.0, kBat), std::domain_error);
    }
}

TEST_CASE("night budget") {
    SUBCASE("empty battery means no transmission") {
        CHECK(energy::night_budget(0.0, 10.0, 500.0, 100.0, kBat) == 0.0);
    }
    SUBCASE("ideal-efficiency worked example") {
        energy::BatteryParams ideal = kBat;
        ideal.discharge_eff = 1.0;
        // 36 MJ / 10 h = 1000 W sustained, minus 500 W of flight load.
        CHECK(energy::night_budget(36e6, 10.0, 400.0, 100.0, ideal) ==
              doctest::Approx(500.0));
    }
    SUBCASE("clamps at zero instead of going negative") {
        CHECK(energy::night_budget(1e6, 10.0, 5000.0, 200.0, kBat) == 0.0);
    }
    SUBCASE("night length must be positive") {
        CHECK_THROWS_AS(energy::night_budget(1e6, 0.0, 100.0, 100.0, kBat),
                        std::domain_error);
    }
}

TEST_CASE("storage requirement") {
    SUBCASE("no night load needs no set-aside") {
        CHECK(energy::storage_requirement(12.0, 0.0, 0.0, 0.0, kBat, 12.0) == 0.0);
    }
    SUBCASE("symmetric ideal case is one-to-one") {
        energy::BatteryParams ideal = kBat;
        ideal.charge_eff = 1.0;
        ideal.discharge_eff = 1.0;
        CHECK(energy::storage_requirement(12.0, 800.0, 100.0, 100.0, ideal, 12.0) ==
              doctest::Approx(1000.0));
    }
    SUBCASE("table efficiencies inflate the symmetric case") {
        CHECK(energy::storage_requirement(12.0, 800.0, 100.0, 100.0, kBat, 12.0) ==
              doctest::Approx(1000.0 / (0.93 * 0.97)).epsilon(1e-12));
    }
    SUBCASE("remaining daylight must be positive") {
        CHECK_THROWS_AS(energy::storage_requirement(12.0, 1.0, 1.0, 1.0, kBat, 0.0),
                        std::domain_error);
    }
}

TEST_CASE("ledger bookkeeping and energy conservation") {
    energy::Ledger ledger;
    ledger.initial_energy_j = 50e6;
    double e = ledger.initial_energy_j;
    const double nets[] = {-2000.0, -2000.0, 5000.0, 8000.0, -3000.0};
    for (int i = 0; i < 5; ++i) {
        energy::LedgerRow row;
        row.hour = i;
        row.net_power_w = nets[i];
        std::uint8_t flags = 0;
        e = energy::step_battery(e, nets[i], 3600.0, kBat, &flags);
        row.energy_j = e;
        row.flags = flags;
        ledger.rows.push_back(row);
    }
    CHECK(ledger.deficit_count() == 0);
    CHECK(ledger.saturation_count() == 0);
    // Reconstruct the final state from the trace alone.
    double recon = ledger.initial_energy_j;
    for (const auto& row : ledger.rows) {
        const double eta = row.net_power_w >= kBat.charge_threshold_w ? kBat.charge_eff
                                                                      : kBat.discharge_eff;
        recon += eta * row.net_power_w * 3600.0;
    }
    CHECK(ledger.final_energy_j() == doctest::Approx(recon).epsilon(1e-12));
}

TEST_CASE("battery validation") {
    energy::BatteryParams bad = kBat;
    bad.charge_eff = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kBat;
    bad.capacity_j = -5.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
