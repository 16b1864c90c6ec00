#include "haps/aero.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace haps::aero {

double Aircraft::induced_drag_coeff() const {
    return 1.0 / (std::numbers::pi * oswald * aspect_ratio);
}

void Aircraft::validate() const {
    const double vals[] = {mass_kg, wing_area_m2, zero_lift_drag, oswald,
                           aspect_ratio, cl_max, prop_efficiency,
                           engine_efficiency, accessory_power_w};
    for (double v : vals) {
        if (!(v > 0.0)) throw std::invalid_argument("aircraft parameters must be strictly positive");
    }
    if (prop_efficiency > 1.0 || engine_efficiency > 1.0)
        throw std::invalid_argument("efficiencies must lie in (0, 1]");
}

void FlightBounds::validate() const {
    if (!(h_min_m < h_max_m)) throw std::invalid_argument("h_min must be below h_max");
    if (!(v_max_mps > 0.0)) throw std::invalid_argument("v_max must be > 0");
}

double thrust(const Aircraft& a, const atmo::DensityModel& rho, double h, double v) {
    if (!(v > 0.0)) throw std::domain_error("airspeed must be > 0");
    const double r = rho(h);
    const double w = a.weight_n(rho.constants);
    const double parasitic = 0.5 * r * v * v * a.wing_area_m2 * a.zero_lift_drag;
    const double induced = a.induced_drag_coeff() * 2.0 * w * w /
                           (r * a.wing_area_m2 * v * v);
    return parasitic + induced;
}

double propulsion_power(const Aircraft& a, const atmo::DensityModel& rho, double h, double v) {
    return thrust(a, rho, h, v) * v / (a.prop_efficiency * a.engine_efficiency);
}

double required_power(const Aircraft& a, const atmo::DensityModel& rho, double h, double v) {
    return a.accessory_power_w + propulsion_power(a, rho, h, v);
}

FlightState flight_state(const Aircraft& a, const atmo::DensityModel& rho, double h, double v) {
    const double t = thrust(a, rho, h, v);
    const double p = t * v / (a.prop_efficiency * a.engine_efficiency);
    return FlightState{h, v, t, p, a.accessory_power_w + p};
}

PowerGradient propulsion_power_gradient(const Aircraft& a, const atmo::DensityModel& rho,
                                        double h, double v) {
    const atmo::Constants& ac = rho.constants;
    const double r = rho(h);
    const double w = a.weight_n(ac);
    const double eps = a.induced_drag_coeff();
    const double eta = a.prop_efficiency * a.engine_efficiency;
    double drho_dh;
    if (rho.use_polynomial) {
        const double h_km = h / 1000.0;
        drho_dh = (2.0 * 0.95162 * h_km - 52.29356) / 1000.0 / 1000.0;
    } else if (h <= ac.h_b2) {
        drho_dh = -ac.g * ac.molar_mass / (ac.r_univ * ac.t_b) * r;
    } else {
        const double t = atmo::temperature_at(ac, h);
        drho_dh = -r * (ac.g * ac.molar_mass / ac.r_univ + ac.lapse_rate) / t;
    }
    const double s = a.wing_area_m2;
    const double d_dh = (0.5 * drho_dh * v * v * v * s * a.zero_lift_drag -
                         eps * 2.0 * w * w / (r * r * s * v) * drho_dh) / eta;
    const double d_dv = (1.5 * r * v * v * s * a.zero_lift_drag -
                         eps * 2.0 * w * w / (r * s * v * v)) / eta;
    return PowerGradient{d_dh, d_dv};
}

double stall_speed(const Aircraft& a, const atmo::DensityModel& rho, double h) {
    const double w = a.weight_n(rho.constants);
    return std::sqrt(2.0 * w / (rho(h) * a.wing_area_m2 * a.cl_max));
}

double minimum_power_speed(const Aircraft& a, const atmo::DensityModel& rho, double h) {
    const double w = a.weight_n(rho.constants);
    return std::sqrt(2.0 * w / (rho(h) * a.wing_area_m2) *
                     std::sqrt(a.induced_drag_coeff() / (3.0 * a.zero_lift_drag)));
}

double optimal_speed(const Aircraft& a, const atmo::DensityModel& rho, double h,
                     const FlightBounds& b) {
    const double vm = minimum_power_speed(a, rho, h);
    const double vs = stall_speed(a, rho, h);
    if (vm < vs) return vs;
    if (vm > b.v_max_mps) return b.v_max_mps;
    return vm;
}

double stationary_altitude(const Aircraft& a, const atmo::DensityModel& rho, double v) {
    if (!(v > 0.0)) throw std::domain_error("airspeed must be > 0");
    const atmo::Constants& ac = rho.constants;
    const double w = a.mass_kg * ac.g;
    const double rho_target = 2.0 * w / (a.wing_area_m2 * v * v) *
                              std::sqrt(a.induced_drag_coeff() / a.zero_lift_drag);
    if (rho.use_polynomial) {
        // Descending root of the quadratic fit; targets below the vertex
        // density are unreachable and map far above the band.
        const double qa = 0.95162, qb = -52.29356, qc = 753.39927 - 1000.0 * rho_target;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) return 1e6;
        return (-qb - std::sqrt(disc)) / (2.0 * qa) * 1000.0;
    }
    const double varpi = rho_target * ac.r_sp;
    // Stratosphere I: p(H) = varpi * T_b
    const double h1 = ac.h_b1 - ac.r_univ * ac.t_b / (ac.g * ac.molar_mass) *
                                    std::log(varpi * ac.t_b / ac.p_b1);
    // Stratosphere II: T^(gM/(R Lb) + 1) = p_b2 T_b^(gM/(R Lb)) / varpi,
    // evaluated in logs; the temperature power is astronomically large.
    const double gm_rl = ac.g * ac.molar_mass / (ac.r_univ * ac.lapse_rate);
    const double vtheta = 1.0 / (gm_rl + 1.0);
    const double log_t = vtheta * (std::log(ac.p_b2) + gm_rl * std::log(ac.t_b) - std::log(varpi));
    const double h2 = ac.h_b2 + (std::exp(log_t) - ac.t_b) / ac.lapse_rate;

    const bool feas1 = h1 >= ac.h_b1 && h1 <= ac.h_b2;
    const bool feas2 = h2 >= ac.h_b2 && h2 <= ac.h_max_valid();
    if (feas2) return h2;  // preferred when both branches are feasible
    if (feas1) return h1;
    // Target density outside the modelled band; report the out-of-range
    // stationary point so the clamp rule can act on it.
    return h1 < ac.h_b1 ? h1 : h2;
}

double optimal_altitude(const Aircraft& a, const atmo::DensityModel& rho, double v,
                        const FlightBounds& b) {
    const double hm = stationary_altitude(a, rho, v);
    if (hm >= b.h_min_m && hm <= b.h_max_m) return hm;
    return b.h_max_m;
}

}  // namespace haps::aero
