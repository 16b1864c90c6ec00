#include "haps/atmosphere.hpp"

#include <cmath>
#include <string>

namespace haps::atmo {

void Constants::validate() const {
    const double vals[] = {p0, p_b1, p_b2, h_b1, h_b2, t_b, lapse_rate,
                           r_univ, r_sp, g, molar_mass};
    for (double v : vals) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("atmosphere constants must be strictly positive");
        }
    }
    if (h_b1 >= h_b2) {
        throw std::invalid_argument("atmosphere base altitudes out of order");
    }
}

namespace {

void check_range(const Constants& c, double h) {
    if (!(h >= c.h_min_valid() && h <= c.h_max_valid())) {
        throw std::domain_error("altitude " + std::to_string(h) +
                                " m outside stratosphere model range [" +
                                std::to_string(c.h_min_valid()) + ", " +
                                std::to_string(c.h_max_valid()) + "] m");
    }
}

}  // namespace

double pressure_first_branch(const Constants& c, double h) {
    return c.p_b1 * std::exp(-c.g * c.molar_mass * (h - c.h_b1) / (c.r_univ * c.t_b));
}

double pressure_at(const Constants& c, double h) {
    check_range(c, h);
    if (h < c.h_b2) {
        return pressure_first_branch(c, h);
    }
    const double exponent = c.g * c.molar_mass / (c.r_univ * c.lapse_rate);
    return c.p_b2 * std::pow(c.t_b / (c.t_b + c.lapse_rate * (h - c.h_b2)), exponent);
}

double temperature_at(const Constants& c, double h) {
    check_range(c, h);
    if (h <= c.h_b2) return c.t_b;
    return c.t_b + c.lapse_rate * (h - c.h_b2);
}

double density_at(const Constants& c, double h) {
    return pressure_at(c, h) / (c.r_sp * temperature_at(c, h));
}

Sample sample_at(const Constants& c, double h) {
    const double p = pressure_at(c, h);
    const double t = temperature_at(c, h);
    return Sample{h, p, p / c.p0, t, p / (c.r_sp * t)};
}

double density_poly(double h_km) {
    return (0.95162 * h_km * h_km - 52.29356 * h_km + 753.39927) / 1000.0;
}

double pressure_poly(double h_km) {
    return 60.0 * h_km * h_km - 3276.7 * h_km + 47022.8;
}

}  // namespace haps::atmo
