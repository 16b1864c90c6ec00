// Per-user downlink channel generation: Rician small-scale fading, the
// sectorial array gain, the space-communication path-loss budget, and the
// composite interference-plus-noise coefficient that orders users within a
// cell.
#pragma once

#include <cstdint>
#include <vector>

#include "haps/rng.hpp"

namespace haps::channel {

/// Link-budget constants of the space communication model.
struct LinkBudgetParams {
    double bandwidth_hz = 20e6;
    double noise_temp_k = 870.0;
    double wavelength_m = 0.15;
    double tx_gain = 2.0;
    double rx_gain = 1.0;
    double pathloss_exponent = 2.0;
    double boltzmann = 1.3800e-23;
    double noise_power = 1.0;  ///< normalized receiver noise variance sigma^2

    void validate() const;
};

/// Two-level sectorial beam pattern.
struct ArrayPattern {
    double mainlobe_gain = 2.0;   ///< M_b
    double backlobe_gain = 0.5;   ///< m_b
    double half_beamwidth_rad = 0.5235987755982988;  ///< theta_b, unit-level only

    void validate() const;
};

/// Hexagonal one-ring layout: one centre cell (index 0) surrounded by
/// edge cells 1..num_cells-1.
struct CellTopology {
    int num_cells = 7;
    int users_per_cell = 8;
    double psi_center_rad = 0.5235987755982988;   ///< pi/6
    double psi_edge_rad = 0.23567836685358968;    ///< pi/13.33
    double rician_k = 4.5;

    /// Interfering-cell set: all edge cells for the centre cell, otherwise
    /// the centre plus the two ring neighbours.
    std::vector<int> neighbors(int cell) const;

    void validate() const;
};

/// Seed-deterministic raw draws for one user: geometry plus fade powers.
struct UserDraw {
    double elevation_rad;              ///< psi, user-to-platform elevation
    double serving_fade;               ///< |g_mm|^2
    std::vector<double> interferer_fades;  ///< |g_mj|^2 per neighbor, topology order
};

/// One materialized link: draws combined with altitude and power budget.
struct UserLink {
    int cell = 0;
    int user = 0;  ///< index of the originating draw within its cell
    double elevation_rad = 0.0;
    double serving_fade = 1.0;
    std::vector<double> interferer_fades;
    double path_loss = 0.0;
    double composite = 0.0;  ///< A, the ordering statistic
};

/// Rician fade power |g|^2 with shape K and unit mean power.
/// Throws std::domain_error for negative K.
double sample_rician_power(double shape_k, Rng& rng);

/// Space path loss (dimensionless, already folded with k_B B T_n).
/// Throws std::domain_error for non-positive elevation.
double path_loss(const LinkBudgetParams& p, double altitude_m, double elevation_rad);

/// Sectorial gain: mainlobe inside |theta| <= theta_b (inclusive), else backlobe.
double array_gain(const ArrayPattern& p, double departure_angle_rad);

/// Composite coefficient A for one user given its draws, the flight
/// altitude and the per-cell transmit powers.
double composite_coefficient(const UserDraw& draw, const CellTopology& topo, int cell,
                             const ArrayPattern& pattern, const LinkBudgetParams& params,
                             double altitude_m, const std::vector<double>& cell_powers);

/// Fading/geometry draws for every user of every cell. Per-hour streams use
/// Rng{seed, hour}; identical seeds give identical draws.
std::vector<std::vector<UserDraw>> draw_cells(const CellTopology& topo, Rng& rng);

/// Materializes links at one altitude and power split and orders each
/// cell's users by decreasing composite A (stable order for ties).
std::vector<std::vector<UserLink>> compose_links(
    const std::vector<std::vector<UserDraw>>& draws, const CellTopology& topo,
    const ArrayPattern& pattern, const LinkBudgetParams& params, double altitude_m,
    const std::vector<double>& cell_powers);

/// draw + compose in one call.
std::vector<std::vector<UserLink>> build_links(const CellTopology& topo,
                                               const ArrayPattern& pattern,
                                               const LinkBudgetParams& params,
                                               double altitude_m,
                                               const std::vector<double>& cell_powers,
                                               std::uint64_t seed);

}  // namespace haps::channel
