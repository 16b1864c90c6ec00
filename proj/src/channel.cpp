#include "haps/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace haps::channel {

void LinkBudgetParams::validate() const {
    const double vals[] = {bandwidth_hz, noise_temp_k, wavelength_m, tx_gain,
                           rx_gain, pathloss_exponent, boltzmann, noise_power};
    for (double v : vals) {
        if (!(v > 0.0)) throw std::invalid_argument("link budget parameters must be strictly positive");
    }
}

void ArrayPattern::validate() const {
    if (!(backlobe_gain > 0.0 && mainlobe_gain > backlobe_gain))
        throw std::invalid_argument("array pattern requires 0 < m_b < M_b");
    if (!(half_beamwidth_rad > 0.0))
        throw std::invalid_argument("half beamwidth must be > 0");
}

void CellTopology::validate() const {
    if (num_cells < 1) throw std::invalid_argument("need at least one cell");
    if (num_cells > 1 && num_cells != 7)
        throw std::invalid_argument("topology supports 1 cell or the 7-cell hex ring");
    if (users_per_cell < 1) throw std::invalid_argument("cells must hold at least one user");
    if (!(0.0 < psi_edge_rad && psi_edge_rad < psi_center_rad &&
          psi_center_rad < std::numbers::pi / 2))
        throw std::invalid_argument("elevation bands require 0 < psi_e < psi_c < pi/2");
    if (rician_k < 0.0) throw std::invalid_argument("Rician K must be >= 0");
}

std::vector<int> CellTopology::neighbors(int cell) const {
    if (num_cells == 1) return {};
    if (cell == 0) {
        std::vector<int> all;
        for (int j = 1; j < num_cells; ++j) all.push_back(j);
        return all;
    }
    const int ring = num_cells - 1;
    const int left = 1 + (cell - 1 + ring - 1) % ring;
    const int right = 1 + (cell - 1 + 1) % ring;
    return {0, left, right};
}

double sample_rician_power(double shape_k, Rng& rng) {
    if (shape_k < 0.0) throw std::domain_error("Rician shape K must be >= 0");
    // LOS amplitude nu and per-component scatter variance chosen so that
    // E[|g|^2] = nu^2 + 2 sigma^2 = 1 for every K.
    const double nu = std::sqrt(shape_k / (shape_k + 1.0));
    const double sigma = std::sqrt(1.0 / (2.0 * (shape_k + 1.0)));
    const double re = nu + sigma * rng.normal();
    const double im = sigma * rng.normal();
    return re * re + im * im;
}

double path_loss(const LinkBudgetParams& p, double altitude_m, double elevation_rad) {
    if (!(elevation_rad > 0.0 && elevation_rad <= std::numbers::pi / 2))
        throw std::domain_error("elevation must lie in (0, pi/2]");
    if (!(altitude_m > 0.0)) throw std::domain_error("altitude must be > 0");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 16.0 * pi2 * p.boltzmann * p.bandwidth_hz * p.noise_temp_k *
           std::pow(altitude_m, p.pathloss_exponent) /
           (p.wavelength_m * p.wavelength_m * p.rx_gain * p.tx_gain *
            std::pow(std::sin(elevation_rad), p.pathloss_exponent));
}

double array_gain(const ArrayPattern& p, double departure_angle_rad) {
    return std::fabs(departure_angle_rad) <= p.half_beamwidth_rad ? p.mainlobe_gain
                                                                  : p.backlobe_gain;
}

double composite_coefficient(const UserDraw& draw, const CellTopology& topo, int cell,
                             const ArrayPattern& pattern, const LinkBudgetParams& params,
                             double altitude_m, const std::vector<double>& cell_powers) {
    const double pm = cell_powers.at(cell);
    if (!(pm > 0.0)) throw std::domain_error("cell power must be > 0");
    const auto nb = topo.neighbors(cell);
    double interference = 0.0;
    for (std::size_t j = 0; j < nb.size(); ++j) {
        interference += cell_powers.at(nb[j]) * draw.interferer_fades.at(j);
    }
    const double mb2 = pattern.backlobe_gain * pattern.backlobe_gain;
    const double Mb2 = pattern.mainlobe_gain * pattern.mainlobe_gain;
    const double tx_snr = pm / params.noise_power;
    return mb2 / (Mb2 * pm * draw.serving_fade) * interference +
           path_loss(params, altitude_m, draw.elevation_rad) /
               (tx_snr * Mb2 * draw.serving_fade);
}

std::vector<std::vector<UserDraw>> draw_cells(const CellTopology& topo, Rng& rng) {
    topo.validate();
    std::vector<std::vector<UserDraw>> cells(topo.num_cells);
    for (int m = 0; m < topo.num_cells; ++m) {
        const auto nb = topo.neighbors(m);
        cells[m].reserve(topo.users_per_cell);
        for (int l = 0; l < topo.users_per_cell; ++l) {
            UserDraw d;
            if (m == 0) {
                d.elevation_rad = rng.uniform(topo.psi_center_rad, std::numbers::pi / 2);
            } else {
                d.elevation_rad = rng.uniform(topo.psi_edge_rad, topo.psi_center_rad);
            }
            d.serving_fade = sample_rician_power(topo.rician_k, rng);
            d.interferer_fades.reserve(nb.size());
            for (std::size_t j = 0; j < nb.size(); ++j) {
                d.interferer_fades.push_back(sample_rician_power(topo.rician_k, rng));
            }
            cells[m].push_back(std::move(d));
        }
    }
    return cells;
}

std::vector<std::vector<UserLink>> compose_links(
    const std::vector<std::vector<UserDraw>>& draws, const CellTopology& topo,
    const ArrayPattern& pattern, const LinkBudgetParams& params, double altitude_m,
    const std::vector<double>& cell_powers) {
    if (draws.empty() || static_cast<int>(draws.size()) != topo.num_cells)
        throw std::domain_error("draws do not match topology");
    std::vector<std::vector<UserLink>> out(draws.size());
    for (int m = 0; m < topo.num_cells; ++m) {
        if (draws[m].empty()) throw std::domain_error("empty cell");
        auto& links = out[m];
        links.reserve(draws[m].size());
        for (std::size_t l = 0; l < draws[m].size(); ++l) {
            const UserDraw& d = draws[m][l];
            UserLink lk;
            lk.cell = m;
            lk.user = static_cast<int>(l);
            lk.elevation_rad = d.elevation_rad;
            lk.serving_fade = d.serving_fade;
            lk.interferer_fades = d.interferer_fades;
            lk.path_loss = path_loss(params, altitude_m, d.elevation_rad);
            lk.composite = composite_coefficient(d, topo, m, pattern, params,
                                                 altitude_m, cell_powers);
            links.push_back(std::move(lk));
        }
        // Decreasing A; stable so equal composites keep user-index order.
        std::stable_sort(links.begin(), links.end(),
                         [](const UserLink& a, const UserLink& b) {
                             return a.composite > b.composite;
                         });
    }
    return out;
}

std::vector<std::vector<UserLink>> build_links(const CellTopology& topo,
                                               const ArrayPattern& pattern,
                                               const LinkBudgetParams& params,
                                               double altitude_m,
                                               const std::vector<double>& cell_powers,
                                               std::uint64_t seed) {
    Rng rng(seed);
    const auto draws = draw_cells(topo, rng);
    return compose_links(draws, topo, pattern, params, altitude_m, cell_powers);
}

}  // namespace haps::channel
