#include "haps/energy.hpp"

#include <algorithm>
#include <stdexcept>

namespace haps::energy {

void BatteryParams::validate() const {
    if (!(charge_eff > 0.0 && charge_eff <= 1.0))
        throw std::invalid_argument("charge efficiency outside (0, 1]");
    if (!(discharge_eff > 0.0 && discharge_eff <= 1.0))
        throw std::invalid_argument("discharge efficiency outside (0, 1]");
    if (!(capacity_j > 0.0)) throw std::invalid_argument("battery capacity must be > 0");
}

int Ledger::deficit_count() const {
    int n = 0;
    for (const auto& r : rows) n += (r.flags & kFlagDeficit) ? 1 : 0;
    return n;
}

int Ledger::saturation_count() const {
    int n = 0;
    for (const auto& r : rows) n += (r.flags & kFlagSaturated) ? 1 : 0;
    return n;
}

double Ledger::final_energy_j() const {
    return rows.empty() ? initial_energy_j : rows.back().energy_j;
}

double net_power(double available_w, double required_w, double transmit_w) {
    return available_w - required_w - transmit_w;
}

double step_battery(double energy_j, double net_power_w, double dt_s,
                    const BatteryParams& params, std::uint8_t* flags) {
    if (energy_j < 0.0 || energy_j > params.capacity_j)
        throw std::domain_error("battery state outside [0, capacity]");
    const double eta = net_power_w >= params.charge_threshold_w ? params.charge_eff
                                                                : params.discharge_eff;
    double next = energy_j + eta * net_power_w * dt_s;
    if (next < 0.0) {
        if (flags) *flags |= kFlagDeficit;
        next = 0.0;
    } else if (next > params.capacity_j) {
        if (flags) *flags |= kFlagSaturated;
        next = params.capacity_j;
    }
    return next;
}

double night_budget(double energy_at_dusk_j, double night_hours, double propulsion_w,
                    double accessory_w, const BatteryParams& params) {
    if (!(night_hours > 0.0)) throw std::domain_error("night length must be > 0");
    const double sustained = params.discharge_eff * energy_at_dusk_j / (night_hours * 3600.0);
    return std::max(0.0, sustained - propulsion_w - accessory_w);
}

double storage_requirement(double night_hours, double propulsion_w, double accessory_w,
                           double night_transmit_w, const BatteryParams& params,
                           double remaining_daylight_hours) {
    if (!(remaining_daylight_hours > 0.0))
        throw std::domain_error("remaining daylight must be > 0");
    const double night_load_w = propulsion_w + accessory_w + night_transmit_w;
    return night_hours * night_load_w / params.discharge_eff /
           (params.charge_eff * remaining_daylight_hours);
}

}  // namespace haps::energy
