// Solar geometry and irradiance: civil-UTC to Julian day conversion, a
// closed-form solar ephemeris, Kasten-Young relative air mass, atmospheric
// attenuation and harvested panel power.
#pragma once

#include "haps/atmosphere.hpp"

namespace haps::solar {

/// Civil UTC date-time. No time zones; scenario code converts local mean
/// time to UTC through the longitude.
struct DateTime {
    int year = 2021;
    int month = 1;   ///< 1..12
    int day = 1;     ///< 1..31
    double hour = 0.0;  ///< fractional hour of day [0, 24)

    bool operator==(const DateTime&) const = default;
};

/// Astronomical Julian day (fractional; 0h UTC falls on x.5).
double julian_day(const DateTime& dt);

/// Inverse of julian_day (Gregorian calendar).
DateTime from_julian_day(double jd);

/// Calendar-correct shift by a (possibly negative or fractional) number of
/// hours.
DateTime shifted(const DateTime& dt, double hours);

/// Day of the calendar year, 1..366. Drives the orbit-eccentricity factor.
int day_of_year(const DateTime& dt);

/// Site and sky parameters for the irradiance model.
struct Context {
    double longitude_deg = 39.1047;  ///< east positive
    double latitude_deg = 22.3095;   ///< north positive
    double extinction = 0.29;        ///< clear-sky extinction parameter
    double solar_constant = 1361.0;  ///< top-of-atmosphere irradiance [W/m^2]

    void validate() const;
};

/// Solar panel aggregate, area already normal to the irradiance.
struct PanelConfig {
    double efficiency = 0.20;  ///< conversion efficiency, (0, 1]
    double area_m2 = 95.0;     ///< total panel area [m^2]

    void validate() const;
};

/// Solar elevation angle [degrees], negative below the horizon.
///
/// Fractional-year ephemeris (declination + equation of time); accuracy is
/// about half a degree against a high-precision reference, which is
/// sufficient because elevation only enters through the air-mass path
/// length and day/night classification.
double solar_elevation(const Context& ctx, const DateTime& utc);

/// Kasten-Young relative air mass. Finite up to the horizon; returns +inf
/// for zenith >= 90 deg (the no-direct-sun sentinel).
double relative_air_mass(double zenith_deg);

/// Direct-beam attenuation factor in (0, 1]; exactly 0 when the sun is at
/// or below the horizon.
double attenuation_factor(const atmo::Constants& ac, double altitude_m,
                          double elevation_deg, const Context& ctx);

/// Surface irradiance at altitude [W/m^2], including the annual
/// orbit-eccentricity modulation. Zero at night.
double irradiance_at(const atmo::Constants& ac, double altitude_m,
                     const DateTime& utc, const Context& ctx);

/// Harvested electrical power [W] from the panel aggregate.
double harvested_power(const atmo::Constants& ac, double altitude_m,
                       const DateTime& utc, const Context& ctx,
                       const PanelConfig& panel);

}  // namespace haps::solar
