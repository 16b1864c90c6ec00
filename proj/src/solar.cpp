#include "haps/solar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace haps::solar {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

double julian_day(const DateTime& dt) {
    // Fliegel-Van Flandern day number, valid for all Gregorian dates.
    const int a = (14 - dt.month) / 12;
    const int y = dt.year + 4800 - a;
    const int m = dt.month + 12 * a - 3;
    const long jdn = dt.day + (153 * m + 2) / 5 + 365L * y + y / 4 - y / 100 + y / 400 - 32045;
    return static_cast<double>(jdn) - 0.5 + dt.hour / 24.0;
}

DateTime from_julian_day(double jd) {
    const double shifted_jd = jd + 0.5;
    long jdn = static_cast<long>(std::floor(shifted_jd));
    double frac = shifted_jd - static_cast<double>(jdn);
    // Richards' algorithm for Gregorian civil date from the day number.
    const long a = jdn + 32044;
    const long b = (4 * a + 3) / 146097;
    const long c = a - 146097 * b / 4;
    const long d = (4 * c + 3) / 1461;
    const long e = c - 1461 * d / 4;
    const long m = (5 * e + 2) / 153;
    DateTime out;
    out.day = static_cast<int>(e - (153 * m + 2) / 5 + 1);
    out.month = static_cast<int>(m + 3 - 12 * (m / 10));
    out.year = static_cast<int>(100 * b + d - 4800 + m / 10);
    out.hour = frac * 24.0;
    return out;
}

DateTime shifted(const DateTime& dt, double hours) {
    return from_julian_day(julian_day(dt) + hours / 24.0);
}

int day_of_year(const DateTime& dt) {
    static constexpr int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (dt.year % 4 == 0 && dt.year % 100 != 0) || dt.year % 400 == 0;
    int doy = dt.day;
    for (int i = 0; i < dt.month - 1; ++i) doy += days[i];
    if (leap && dt.month > 2) doy += 1;
    return doy;
}

void Context::validate() const {
    if (latitude_deg < -90.0 || latitude_deg > 90.0)
        throw std::invalid_argument("latitude outside [-90, 90]");
    if (longitude_deg < -180.0 || longitude_deg > 180.0)
        throw std::invalid_argument("longitude outside [-180, 180]");
    if (!(extinction > 0.0)) throw std::invalid_argument("extinction must be > 0");
    if (!(solar_constant > 0.0)) throw std::invalid_argument("solar constant must be > 0");
}

void PanelConfig::validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("panel efficiency outside (0, 1]");
    if (!(area_m2 > 0.0)) throw std::invalid_argument("panel area must be > 0");
}

double solar_elevation(const Context& ctx, const DateTime& utc) {
    const double frac = 2.0 * kPi / 365.0 *
                        (day_of_year(utc) - 1 + (utc.hour - 12.0) / 24.0);
    const double decl = 0.006918 - 0.399912 * std::cos(frac) + 0.070257 * std::sin(frac)
                        - 0.006758 * std::cos(2 * frac) + 0.000907 * std::sin(2 * frac)
                        - 0.002697 * std::cos(3 * frac) + 0.00148 * std::sin(3 * frac);
    const double eqtime_min = 229.18 * (0.000075 + 0.001868 * std::cos(frac)
                                        - 0.032077 * std::sin(frac)
                                        - 0.014615 * std::cos(2 * frac)
                                        - 0.040849 * std::sin(2 * frac));
    const double true_solar_min = utc.hour * 60.0 + eqtime_min + 4.0 * ctx.longitude_deg;
    const double hour_angle_deg = true_solar_min / 4.0 - 180.0;
    const double lat = ctx.latitude_deg * kDegToRad;
    double cos_zen = std::sin(lat) * std::sin(decl) +
                     std::cos(lat) * std::cos(decl) * std::cos(hour_angle_deg * kDegToRad);
    cos_zen = std::clamp(cos_zen, -1.0, 1.0);
    return 90.0 - std::acos(cos_zen) / kDegToRad;
}

double relative_air_mass(double zenith_deg) {
    if (zenith_deg >= 90.0) return std::numeric_limits<double>::infinity();
    if (zenith_deg < 0.0) zenith_deg = -zenith_deg;
    return 1.0 / (std::cos(zenith_deg * kDegToRad) +
                  0.50572 * std::pow(96.07995 - zenith_deg, -1.6364));
}

double attenuation_factor(const atmo::Constants& ac, double altitude_m,
                          double elevation_deg, const Context& ctx) {
    if (elevation_deg <= 0.0) return 0.0;
    const double rel_pressure = pressure_at(ac, altitude_m) / ac.p0;
    const double air_mass = relative_air_mass(90.0 - elevation_deg);
    return std::exp(-rel_pressure * air_mass * ctx.extinction);
}

double irradiance_at(const atmo::Constants& ac, double altitude_m,
                     const DateTime& utc, const Context& ctx) {
    const double elevation = solar_elevation(ctx, utc);
    if (elevation <= 0.0) return 0.0;
    // Eccentricity phase runs on the day of year, not the astronomical
    // Julian day number (whose multi-million magnitude would alias the
    // annual cosine arbitrarily).
    const double ecc = 1.0 + 0.034 * std::cos(2.0 * kPi * day_of_year(utc) / 365.0);
    return ctx.solar_constant * ecc * attenuation_factor(ac, altitude_m, elevation, ctx);
}

double harvested_power(const atmo::Constants& ac, double altitude_m,
                       const DateTime& utc, const Context& ctx,
                       const PanelConfig& panel) {
    return panel.efficiency * panel.area_m2 * irradiance_at(ac, altitude_m, utc, ctx);
}

}  // namespace haps::solar
