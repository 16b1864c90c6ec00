#include "haps/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace haps::scenario {

using nlohmann::json;

void ScenarioConfig::validate() const {
    location.validate();
    atmosphere.validate();
    aircraft.validate();
    bounds.validate();
    panel.validate();
    battery.validate();
    link.validate();
    pattern.validate();
    topology.validate();
    if (dates.empty()) throw std::invalid_argument("at least one date required");
    for (const auto& d : dates) {
        if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31)
            throw std::invalid_argument("date out of range: " + d.label);
        if (!(d.extinction > 0.0))
            throw std::invalid_argument("extinction must be > 0 for " + d.label);
    }
    const double steps = 24.0 / step_hours;
    if (!(step_hours > 0.0) || step_hours > 1.0 ||
        std::fabs(steps - std::round(steps)) > 1e-9)
        throw std::invalid_argument("step_hours must divide 24 and lie in (0, 1]");
    if (!(feedline_fraction > 0.0 && feedline_fraction <= 1.0))
        throw std::invalid_argument("feedline_fraction outside (0, 1]");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (qos_mbps.empty()) throw std::invalid_argument("at least one QoS target required");
    for (double q : qos_mbps)
        if (q < 0.0) throw std::invalid_argument("QoS targets must be >= 0");
    if (bounds.h_min_m < atmosphere.h_min_valid() || bounds.h_max_m > atmosphere.h_max_valid())
        throw std::invalid_argument("flight bounds leave the atmosphere model range");
    if (!(night_transmit_target_w >= 0.0))
        throw std::invalid_argument("night_transmit_target_w must be >= 0");
    if (initial_energy_j > battery.capacity_j)
        throw std::invalid_argument("initial_energy_j exceeds battery capacity");
    if (!(baseline_altitude_m >= bounds.h_min_m && baseline_altitude_m <= bounds.h_max_m))
        throw std::invalid_argument("baseline_altitude_m outside flight bounds");
    if (!(baseline_speed_factor >= 1.0))
        throw std::invalid_argument("baseline_speed_factor must be >= 1");
}

int ScenarioConfig::steps_per_day() const {
    return static_cast<int>(std::lround(24.0 / step_hours));
}

ScenarioDate resolve_date(const std::string& text, double extinction_ws,
                          double extinction_ss) {
    ScenarioDate d;
    if (text == "ws") {
        d = ScenarioDate{"ws", 2021, 12, 21, extinction_ws};
    } else if (text == "ss") {
        d = ScenarioDate{"ss", 2021, 6, 21, extinction_ss};
    } else {
        int y = 0, m = 0, dd = 0;
        if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &dd) != 3)
            throw std::invalid_argument("date must be ws, ss, or YYYY-MM-DD: " + text);
        // Winter-half dates default to the clearer winter extinction.
        const bool summer_half = m >= 4 && m <= 9;
        d = ScenarioDate{text, y, m, dd, summer_half ? extinction_ss : extinction_ws};
    }
    return d;
}

namespace {

constexpr double kExtinctionWsDefault = 0.29;
constexpr double kExtinctionSsDefault = 0.465;

std::vector<ScenarioDate> default_dates() {
    return {resolve_date("ws", kExtinctionWsDefault, kExtinctionSsDefault),
            resolve_date("ss", kExtinctionWsDefault, kExtinctionSsDefault)};
}

void reject_unknown(const json& obj, const std::string& section,
                    std::initializer_list<const char*> known) {
    std::string unknown;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool found = false;
        for (const char* k : known)
            if (it.key() == k) { found = true; break; }
        if (!found) unknown += (unknown.empty() ? "" : ", ") + it.key();
    }
    if (!unknown.empty())
        throw std::invalid_argument("unknown config keys in " + section + ": " + unknown);
}

template <typename T>
void take(const json& obj, const char* key, T& into, const std::string& section,
          std::vector<std::string>& log) {
    if (!obj.contains(key)) return;
    into = obj.at(key).get<T>();
    std::ostringstream os;
    os << section << "." << key << " = " << json(into).dump();
    log.push_back(os.str());
}

}  // namespace

ScenarioConfig load_config_text(const std::string& text) {
    ScenarioConfig cfg;
    cfg.dates = default_dates();
    std::string trimmed;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
    if (trimmed.empty()) {
        cfg.validate();
        return cfg;
    }
    json root = json::parse(text);
    if (!root.is_object()) throw std::invalid_argument("config root must be an object");
    reject_unknown(root, "root",
                   {"location", "dates", "step_hours", "atmosphere", "aircraft",
                    "bounds", "panel", "battery", "link", "pattern", "topology",
                    "qos_mbps", "feedline_fraction", "tolerance", "max_iterations",
                    "trajectory_radius_km", "seed", "polynomial_atmosphere",
                    "baseline_mode", "night_transmit_target_w", "initial_energy_j",
                    "baseline_altitude_m", "baseline_speed_factor"});
    auto& log = cfg.override_log;

    if (root.contains("location")) {
        const json& o = root["location"];
        reject_unknown(o, "location", {"longitude_deg", "latitude_deg", "solar_constant"});
        take(o, "longitude_deg", cfg.location.longitude_deg, "location", log);
        take(o, "latitude_deg", cfg.location.latitude_deg, "location", log);
        take(o, "solar_constant", cfg.location.solar_constant, "location", log);
    }
    double ext_ws = kExtinctionWsDefault, ext_ss = kExtinctionSsDefault;
    if (root.contains("dates")) {
        const json& o = root["dates"];
        reject_unknown(o, "dates", {"list", "extinction_ws", "extinction_ss"});
        take(o, "extinction_ws", ext_ws, "dates", log);
        take(o, "extinction_ss", ext_ss, "dates", log);
        std::vector<std::string> specs{"ws", "ss"};
        take(o, "list", specs, "dates", log);
        cfg.dates.clear();
        for (const auto& s : specs) cfg.dates.push_back(resolve_date(s, ext_ws, ext_ss));
    } else {
        cfg.dates = {resolve_date("ws", ext_ws, ext_ss), resolve_date("ss", ext_ws, ext_ss)};
    }
    take(root, "step_hours", cfg.step_hours, "root", log);
    if (root.contains("atmosphere")) {
        const json& o = root["atmosphere"];
        reject_unknown(o, "atmosphere",
                       {"p0", "p_b1", "p_b2", "h_b1", "h_b2", "t_b", "lapse_rate",
                        "r_univ", "r_sp", "g", "molar_mass"});
        auto& a = cfg.atmosphere;
        take(o, "p0", a.p0, "atmosphere", log);
        take(o, "p_b1", a.p_b1, "atmosphere", log);
        take(o, "p_b2", a.p_b2, "atmosphere", log);
        take(o, "h_b1", a.h_b1, "atmosphere", log);
        take(o, "h_b2", a.h_b2, "atmosphere", log);
        take(o, "t_b", a.t_b, "atmosphere", log);
        take(o, "lapse_rate", a.lapse_rate, "atmosphere", log);
        take(o, "r_univ", a.r_univ, "atmosphere", log);
        take(o, "r_sp", a.r_sp, "atmosphere", log);
        take(o, "g", a.g, "atmosphere", log);
        take(o, "molar_mass", a.molar_mass, "atmosphere", log);
    }
    if (root.contains("aircraft")) {
        const json& o = root["aircraft"];
        reject_unknown(o, "aircraft",
                       {"mass_kg", "wing_area_m2", "zero_lift_drag", "oswald",
                        "aspect_ratio", "cl_max", "prop_efficiency",
                        "engine_efficiency", "accessory_power_w"});
        auto& a = cfg.aircraft;
        take(o, "mass_kg", a.mass_kg, "aircraft", log);
        take(o, "wing_area_m2", a.wing_area_m2, "aircraft", log);
        take(o, "zero_lift_drag", a.zero_lift_drag, "aircraft", log);
        take(o, "oswald", a.oswald, "aircraft", log);
        take(o, "aspect_ratio", a.aspect_ratio, "aircraft", log);
        take(o, "cl_max", a.cl_max, "aircraft", log);
        take(o, "prop_efficiency", a.prop_efficiency, "aircraft", log);
        take(o, "engine_efficiency", a.engine_efficiency, "aircraft", log);
        take(o, "accessory_power_w", a.accessory_power_w, "aircraft", log);
    }
    if (root.contains("bounds")) {
        const json& o = root["bounds"];
        reject_unknown(o, "bounds", {"h_min_m", "h_max_m", "v_max_mps"});
        take(o, "h_min_m", cfg.bounds.h_min_m, "bounds", log);
        take(o, "h_max_m", cfg.bounds.h_max_m, "bounds", log);
        take(o, "v_max_mps", cfg.bounds.v_max_mps, "bounds", log);
        if (cfg.bounds.h_min_m >= cfg.bounds.h_max_m)
            throw std::invalid_argument("bounds: h_min_m must be below h_max_m");
    }
    if (root.contains("panel")) {
        const json& o = root["panel"];
        reject_unknown(o, "panel", {"efficiency", "area_m2"});
        take(o, "efficiency", cfg.panel.efficiency, "panel", log);
        take(o, "area_m2", cfg.panel.area_m2, "panel", log);
    }
    if (root.contains("battery")) {
        const json& o = root["battery"];
        reject_unknown(o, "battery",
                       {"charge_eff", "discharge_eff", "capacity_j", "charge_threshold_w"});
        auto& b = cfg.battery;
        take(o, "charge_eff", b.charge_eff, "battery", log);
        take(o, "discharge_eff", b.discharge_eff, "battery", log);
        take(o, "capacity_j", b.capacity_j, "battery", log);
        take(o, "charge_threshold_w", b.charge_threshold_w, "battery", log);
    }
    if (root.contains("link")) {
        const json& o = root["link"];
        reject_unknown(o, "link",
                       {"bandwidth_hz", "noise_temp_k", "wavelength_m", "tx_gain",
                        "rx_gain", "pathloss_exponent", "boltzmann", "noise_power"});
        auto& l = cfg.link;
        take(o, "bandwidth_hz", l.bandwidth_hz, "link", log);
        take(o, "noise_temp_k", l.noise_temp_k, "link", log);
        take(o, "wavelength_m", l.wavelength_m, "link", log);
        take(o, "tx_gain", l.tx_gain, "link", log);
        take(o, "rx_gain", l.rx_gain, "link", log);
        take(o, "pathloss_exponent", l.pathloss_exponent, "link", log);
        take(o, "boltzmann", l.boltzmann, "link", log);
        take(o, "noise_power", l.noise_power, "link", log);
    }
    if (root.contains("pattern")) {
        const json& o = root["pattern"];
        reject_unknown(o, "pattern", {"mainlobe_gain", "backlobe_gain", "half_beamwidth_rad"});
        take(o, "mainlobe_gain", cfg.pattern.mainlobe_gain, "pattern", log);
        take(o, "backlobe_gain", cfg.pattern.backlobe_gain, "pattern", log);
        take(o, "half_beamwidth_rad", cfg.pattern.half_beamwidth_rad, "pattern", log);
    }
    if (root.contains("topology")) {
        const json& o = root["topology"];
        reject_unknown(o, "topology",
                       {"num_cells", "users_per_cell", "psi_center_rad", "psi_edge_rad",
                        "rician_k"});
        auto& t = cfg.topology;
        take(o, "num_cells", t.num_cells, "topology", log);
        take(o, "users_per_cell", t.users_per_cell, "topology", log);
        take(o, "psi_center_rad", t.psi_center_rad, "topology", log);
        take(o, "psi_edge_rad", t.psi_edge_rad, "topology", log);
        take(o, "rician_k", t.rician_k, "topology", log);
    }
    take(root, "qos_mbps", cfg.qos_mbps, "root", log);
    take(root, "feedline_fraction", cfg.feedline_fraction, "root", log);
    take(root, "tolerance", cfg.tolerance, "root", log);
    take(root, "max_iterations", cfg.max_iterations, "root", log);
    take(root, "trajectory_radius_km", cfg.trajectory_radius_km, "root", log);
    take(root, "seed", cfg.seed, "root", log);
    take(root, "polynomial_atmosphere", cfg.polynomial_atmosphere, "root", log);
    take(root, "baseline_mode", cfg.baseline_mode, "root", log);
    take(root, "night_transmit_target_w", cfg.night_transmit_target_w, "root", log);
    take(root, "initial_energy_j", cfg.initial_energy_j, "root", log);
    take(root, "baseline_altitude_m", cfg.baseline_altitude_m, "root", log);
    take(root, "baseline_speed_factor", cfg.baseline_speed_factor, "root", log);

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

std::string to_json(const ScenarioConfig& cfg) {
    json root;
    root["location"] = {{"longitude_deg", cfg.location.longitude_deg},
                        {"latitude_deg", cfg.location.latitude_deg},
                        {"solar_constant", cfg.location.solar_constant}};
    json dates = json::array();
    for (const auto& d : cfg.dates) {
        dates.push_back({{"label", d.label},
                         {"year", d.year},
                         {"month", d.month},
                         {"day", d.day},
                         {"extinction", d.extinction}});
    }
    root["dates"] = dates;
    root["step_hours"] = cfg.step_hours;
    const auto& a = cfg.atmosphere;
    root["atmosphere"] = {{"p0", a.p0},       {"p_b1", a.p_b1},
                          {"p_b2", a.p_b2},   {"h_b1", a.h_b1},
                          {"h_b2", a.h_b2},   {"t_b", a.t_b},
                          {"lapse_rate", a.lapse_rate}, {"r_univ", a.r_univ},
                          {"r_sp", a.r_sp},   {"g", a.g},
                          {"molar_mass", a.molar_mass}};
    const auto& ac = cfg.aircraft;
    root["aircraft"] = {{"mass_kg", ac.mass_kg},
                        {"wing_area_m2", ac.wing_area_m2},
                        {"zero_lift_drag", ac.zero_lift_drag},
                        {"oswald", ac.oswald},
                        {"aspect_ratio", ac.aspect_ratio},
                        {"cl_max", ac.cl_max},
                        {"prop_efficiency", ac.prop_efficiency},
                        {"engine_efficiency", ac.engine_efficiency},
                        {"accessory_power_w", ac.accessory_power_w}};
    root["bounds"] = {{"h_min_m", cfg.bounds.h_min_m},
                      {"h_max_m", cfg.bounds.h_max_m},
                      {"v_max_mps", cfg.bounds.v_max_mps}};
    root["panel"] = {{"efficiency", cfg.panel.efficiency}, {"area_m2", cfg.panel.area_m2}};
    root["battery"] = {{"charge_eff", cfg.battery.charge_eff},
                       {"discharge_eff", cfg.battery.discharge_eff},
                       {"capacity_j", cfg.battery.capacity_j},
                       {"charge_threshold_w", cfg.battery.charge_threshold_w}};
    const auto& l = cfg.link;
    root["link"] = {{"bandwidth_hz", l.bandwidth_hz},
                    {"noise_temp_k", l.noise_temp_k},
                    {"wavelength_m", l.wavelength_m},
                    {"tx_gain", l.tx_gain},
                    {"rx_gain", l.rx_gain},
                    {"pathloss_exponent", l.pathloss_exponent},
                    {"boltzmann", l.boltzmann},
                    {"noise_power", l.noise_power}};
    root["pattern"] = {{"mainlobe_gain", cfg.pattern.mainlobe_gain},
                       {"backlobe_gain", cfg.pattern.backlobe_gain},
                       {"half_beamwidth_rad", cfg.pattern.half_beamwidth_rad}};
    root["topology"] = {{"num_cells", cfg.topology.num_cells},
                        {"users_per_cell", cfg.topology.users_per_cell},
                        {"psi_center_rad", cfg.topology.psi_center_rad},
                        {"psi_edge_rad", cfg.topology.psi_edge_rad},
                        {"rician_k", cfg.topology.rician_k}};
    root["qos_mbps"] = cfg.qos_mbps;
    root["feedline_fraction"] = cfg.feedline_fraction;
    root["tolerance"] = cfg.tolerance;
    root["max_iterations"] = cfg.max_iterations;
    root["trajectory_radius_km"] = cfg.trajectory_radius_km;
    root["seed"] = cfg.seed;
    root["polynomial_atmosphere"] = cfg.polynomial_atmosphere;
    root["baseline_mode"] = cfg.baseline_mode;
    root["night_transmit_target_w"] = cfg.night_transmit_target_w;
    root["initial_energy_j"] = cfg.initial_energy_j;
    root["baseline_altitude_m"] = cfg.baseline_altitude_m;
    root["baseline_speed_factor"] = cfg.baseline_speed_factor;
    return root.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    const std::string text = to_json(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace haps::scenario
