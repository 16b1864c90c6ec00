// Two-layer stratosphere model (ISA / 1976 U.S. Standard Atmosphere),
// valid between 11 km and 32 km, plus the second-degree polynomial fits
// used by the closed-form flight optimizer over 18-24 km.
#pragma once

#include <stdexcept>

namespace haps::atmo {

/// Physical constants of the two-layer stratosphere model.
/// Defaults are the ISA/USSA values; all overridable through the scenario
/// config.
struct Constants {
    double p0 = 101325.0;       ///< mean-sea-level pressure [Pa]
    double p_b1 = 22632.06;     ///< base pressure, Stratosphere I [Pa]
    double p_b2 = 5474.889;     ///< base pressure, Stratosphere II [Pa]
    double h_b1 = 11000.0;      ///< base altitude, Stratosphere I [m]
    double h_b2 = 20000.0;      ///< base altitude, Stratosphere II [m]
    double t_b = 216.65;        ///< base temperature [K]
    double lapse_rate = 0.001;  ///< Stratosphere II lapse rate [K/m]
    double r_univ = 8.31432;    ///< universal gas constant [N m/(mol K)]
    double r_sp = 287.052;      ///< specific gas constant of air [J/(kg K)]
    double g = 9.8;             ///< gravitational acceleration [m/s^2]
    double molar_mass = 0.0289644;  ///< molar mass of air [kg/mol]

    /// Lowest/highest altitude the model covers [m].
    double h_min_valid() const { return h_b1; }
    double h_max_valid() const { return 32000.0; }

    void validate() const;
};

/// State of the atmosphere at one altitude.
struct Sample {
    double altitude;           ///< [m]
    double pressure;           ///< [Pa]
    double relative_pressure;  ///< pressure / p0, dimensionless
    double temperature;        ///< [K]
    double density;            ///< [kg/m^3]
};

/// Static pressure [Pa]. Exponential branch on [11, 20) km, power-law
/// branch on [20, 32] km.
/// Throws std::domain_error outside [11, 32] km.
double pressure_at(const Constants& c, double altitude_m);

/// Exponential (Stratosphere I) branch evaluated without the branch switch;
/// exists so the 20 km seam continuity can be checked from the outside.
double pressure_first_branch(const Constants& c, double altitude_m);

/// Temperature [K]: constant t_b up to 20 km, then +lapse_rate per metre.
double temperature_at(const Constants& c, double altitude_m);

/// Air density [kg/m^3] via the ideal gas law.
double density_at(const Constants& c, double altitude_m);

/// Full sample at one altitude.
Sample sample_at(const Constants& c, double altitude_m);

/// Second-degree polynomial fit of density over 18-24 km, altitude in km.
/// Fit coefficients are in g/m^3; result converted to kg/m^3.
double density_poly(double altitude_km);

/// Second-degree polynomial fit of pressure over 18-24 km [Pa], altitude in km.
double pressure_poly(double altitude_km);

/// Density lookup switchable between the exact model and the polynomial fit.
struct DensityModel {
    Constants constants;
    bool use_polynomial = false;

    double operator()(double altitude_m) const {
        return use_polynomial ? density_poly(altitude_m / 1000.0)
                              : density_at(constants, altitude_m);
    }
};

}  // namespace haps::atmo
