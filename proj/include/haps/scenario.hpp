// Scenario configuration: the full parameter set of a simulated day, with
// defaults matching the reference system, JSON ingestion with strict
// validation, and a content hash for reproducibility manifests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haps/aero.hpp"
#include "haps/atmosphere.hpp"
#include "haps/channel.hpp"
#include "haps/energy.hpp"
#include "haps/solar.hpp"

namespace haps::scenario {

/// One simulated calendar day and its clear-sky extinction parameter.
struct ScenarioDate {
    std::string label;  ///< "ws", "ss", or an ISO date
    int year = 2021;
    int month = 12;
    int day = 21;
    double extinction = 0.29;
};

struct ScenarioConfig {
    solar::Context location;  ///< longitude/latitude; per-date extinction wins
    std::vector<ScenarioDate> dates;  ///< defaults to winter + summer solstice
    double step_hours = 1.0;          ///< instant length; 24/step must be integral

    atmo::Constants atmosphere;
    aero::Aircraft aircraft;
    aero::FlightBounds bounds;
    solar::PanelConfig panel;
    energy::BatteryParams battery;
    channel::LinkBudgetParams link;
    channel::ArrayPattern pattern;
    channel::CellTopology topology;

    std::vector<double> qos_mbps = {1.0, 2.0, 4.0};  ///< per-user targets, Mbit/s
    double feedline_fraction = 0.1;  ///< usable share of the transmit budget
    double tolerance = 1e-4;         ///< alternating-optimization stop threshold
    int max_iterations = 100;
    double trajectory_radius_km = 3.0;  ///< station-keeping radius; recorded only
    std::uint64_t seed = 42;
    bool polynomial_atmosphere = false;  ///< closed forms use the 18-24 km fits
    bool baseline_mode = false;          ///< fixed flight + equal power split

    double night_transmit_target_w = 2000.0;  ///< planned fixed night budget
    double initial_energy_j = -1.0;  ///< battery at midnight; <0 selects the
                                     ///< steady-state level for the date

    double baseline_altitude_m = 21000.0;
    double baseline_speed_factor = 1.2;  ///< baseline V = factor * stall speed

    /// Notes accumulated while applying config overrides (echoed into the
    /// run manifest).
    std::vector<std::string> override_log;

    void validate() const;
    int steps_per_day() const;
    atmo::DensityModel density_model() const {
        return atmo::DensityModel{atmosphere, polynomial_atmosphere};
    }
};

/// Parses a JSON config document. An empty document yields the defaults.
/// Unknown keys and invariant violations raise std::invalid_argument with
/// the offending names.
ScenarioConfig load_config_text(const std::string& json_text);

/// Reads and parses a config file.
ScenarioConfig load_config_file(const std::string& path);

/// Canonical JSON serialization of the effective config.
std::string to_json(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical serialization; identical configs (after
/// defaulting) hash identically.
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// Resolves "ws" / "ss" / "YYYY-MM-DD" into a ScenarioDate using the
/// config's per-season extinction defaults.
ScenarioDate resolve_date(const std::string& text, double extinction_ws,
                          double extinction_ss);

}  // namespace haps::scenario
