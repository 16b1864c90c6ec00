// Battery energy bookkeeping over the daily cycle: net power, the
// charge/discharge state recursion with its efficiency switch, the fixed
// night transmit budget drawn from stored energy, and the daytime storage
// set-aside rate.
#pragma once

#include <cstdint>
#include <vector>

namespace haps::energy {

struct BatteryParams {
    double charge_eff = 0.93;     ///< eta_c
    double discharge_eff = 0.97;  ///< eta_d
    double capacity_j = 540e6;    ///< E_max
    double charge_threshold_w = 0.0;  ///< mu: net power at/above which we charge

    void validate() const;
};

enum LedgerFlag : std::uint8_t {
    kFlagNone = 0,
    kFlagDeficit = 1,        ///< battery would have gone below empty
    kFlagSaturated = 2,      ///< charge clamped at capacity
    kFlagNoTransmit = 4,     ///< zero transmit budget this instant
    kFlagStorageShort = 8,   ///< daylight storage check unsatisfiable
};

struct LedgerRow {
    int hour = 0;
    double energy_j = 0.0;      ///< battery state after this instant
    double net_power_w = 0.0;
    double available_w = 0.0;   ///< harvested solar power
    double required_w = 0.0;    ///< propulsion + accessory
    double transmit_w = 0.0;
    std::uint8_t flags = kFlagNone;
};

/// Battery trajectory over one simulated day.
struct Ledger {
    std::vector<LedgerRow> rows;
    double initial_energy_j = 0.0;

    int deficit_count() const;
    int saturation_count() const;
    double final_energy_j() const;
};

/// Net power: harvested minus flight and communication demand. Negative at
/// night.
double net_power(double available_w, double required_w, double transmit_w);

/// One battery step: E + eta_b * P_net * dt clamped into [0, capacity].
/// eta_b switches between charge and discharge efficiency at the threshold.
/// Clamping events are reported through `flags`.
double step_battery(double energy_j, double net_power_w, double dt_s,
                    const BatteryParams& params, std::uint8_t* flags = nullptr);

/// Fixed transmit power for a night of the given length, funded by the
/// energy stored at dusk after the flight keeps its share. Clamps at zero
/// (an outage, reported by the caller) rather than going negative.
double night_budget(double energy_at_dusk_j, double night_hours, double propulsion_w,
                    double accessory_w, const BatteryParams& params);

/// Day-time per-hour storage set-aside [W] that fills the battery with the
/// coming night's demand by dusk.
double storage_requirement(double night_hours, double propulsion_w, double accessory_w,
                           double night_transmit_w, const BatteryParams& params,
                           double remaining_daylight_hours);

}  // namespace haps::energy
