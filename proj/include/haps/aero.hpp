// Steady-level-flight performance model: drag-polar thrust, propulsion and
// required power, stall speed, and the closed-form minimum-power airspeed
// and altitude used by the night optimizer.
#pragma once

#include "haps/atmosphere.hpp"

namespace haps::aero {

/// Airframe and powertrain parameters. Defaults are the reference
/// high-altitude platform configuration.
struct Aircraft {
    double mass_kg = 640.0;
    double wing_area_m2 = 190.0;
    double zero_lift_drag = 0.015;     ///< C_D0
    double oswald = 0.6385;            ///< Oswald efficiency factor e
    double aspect_ratio = 30.0;        ///< wing aspect ratio
    double cl_max = 1.2;               ///< maximum lift coefficient
    double prop_efficiency = 0.85;
    double engine_efficiency = 0.90;
    double accessory_power_w = 200.0;  ///< avionics + payload housekeeping

    /// Induced-drag coefficient 1/(pi e AR).
    double induced_drag_coeff() const;
    /// Weight force [N] under the model's gravitational acceleration.
    double weight_n(const atmo::Constants& ac) const { return mass_kg * ac.g; }

    void validate() const;
};

/// Box constraints of the flight envelope.
struct FlightBounds {
    double h_min_m = 18000.0;
    double h_max_m = 24000.0;
    double v_max_mps = 60.0;

    void validate() const;
};

/// One steady-level operating point and its power demand.
struct FlightState {
    double altitude_m;
    double airspeed_mps;
    double thrust_n;
    double propulsion_power_w;
    double required_power_w;  ///< propulsion + accessory
};

/// Level-flight thrust [N]: parasitic + induced drag.
/// Throws std::domain_error for non-positive airspeed.
double thrust(const Aircraft& a, const atmo::DensityModel& rho, double altitude_m,
              double airspeed_mps);

/// Propulsion power [W]: thrust * V / (eta_p * eta_e).
double propulsion_power(const Aircraft& a, const atmo::DensityModel& rho,
                        double altitude_m, double airspeed_mps);

/// Required power [W]: accessory + propulsion.
double required_power(const Aircraft& a, const atmo::DensityModel& rho,
                      double altitude_m, double airspeed_mps);

FlightState flight_state(const Aircraft& a, const atmo::DensityModel& rho,
                         double altitude_m, double airspeed_mps);

/// Analytic gradient of propulsion power. Matches central finite
/// differences away from the 20 km layer seam, where d(rho)/dH is kinked.
struct PowerGradient {
    double d_dh;  ///< [W/m]; exact-model only (poly fit differentiates too)
    double d_dv;  ///< [W/(m/s)]
};
PowerGradient propulsion_power_gradient(const Aircraft& a, const atmo::DensityModel& rho,
                                        double altitude_m, double airspeed_mps);

/// Stall speed [m/s]: the minimum airspeed sustaining level flight.
double stall_speed(const Aircraft& a, const atmo::DensityModel& rho, double altitude_m);

/// Unconstrained minimum-power airspeed V_m at fixed altitude.
double minimum_power_speed(const Aircraft& a, const atmo::DensityModel& rho,
                           double altitude_m);

/// V_m clamped into [stall, v_max]: the P2(a)/P1(c) solution.
double optimal_speed(const Aircraft& a, const atmo::DensityModel& rho,
                     double altitude_m, const FlightBounds& b);

/// Stationary altitude H_m at fixed airspeed: inverts the density profile
/// against the minimum-power density 2W/(S V^2) * sqrt(eps/C_D0). With the
/// exact model the Stratosphere-II branch wins when both layer inversions
/// are feasible; with the polynomial fit the quadratic's descending root is
/// taken. Never throws; unreachable density targets return an out-of-range
/// altitude so callers can clamp.
double stationary_altitude(const Aircraft& a, const atmo::DensityModel& rho,
                           double airspeed_mps);

/// H_m passed through the published clamp rule: H_m when inside
/// [h_min, h_max], otherwise h_max (also for H_m below h_min).
double optimal_altitude(const Aircraft& a, const atmo::DensityModel& rho,
                        double airspeed_mps, const FlightBounds& b);

}  // namespace haps::aero
