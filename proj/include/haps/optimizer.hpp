// Alternating optimization of flight and communication: the day-time loop
// (power allocation / altitude / airspeed subproblems against the solar
// budget) and the night-time propulsion-power minimizer, plus the 24-hour
// scenario driver that threads both through the battery ledger.
#pragma once

#include <cstdint>
#include <vector>

#include "haps/energy.hpp"
#include "haps/noma.hpp"
#include "haps/scenario.hpp"

namespace haps::opt {

/// Result of the per-cell power-allocation subproblem at one operating
/// point.
struct AllocationStep {
    std::vector<noma::PowerAllocation> allocations;  ///< one per cell
    std::vector<std::vector<channel::UserLink>> links;  ///< ordered per cell
    noma::RateReport report;
};

/// Power allocation for every cell at a fixed altitude and transmit budget
/// (equal per-cell split of the post-feed-line budget).
AllocationStep solve_p1a(const scenario::ScenarioConfig& cfg,
                         const std::vector<std::vector<channel::UserDraw>>& draws,
                         double altitude_m, double transmit_w, double qos_norm);

/// Altitude subproblem: lowest altitude wins the path loss unless the
/// storage set-aside cannot be met there; then the lowest altitude that can
/// carry it, else the altitude with maximal net power (flagged).
struct AltitudeChoice {
    double altitude_m;
    bool storage_satisfied;
};
AltitudeChoice solve_p1b(const scenario::ScenarioConfig& cfg,
                         const solar::DateTime& utc, double extinction,
                         double storage_setaside_w);

/// Airspeed subproblem: the closed-form minimum-power speed clamped into
/// [stall, v_max] at the given altitude.
double solve_p1c(const scenario::ScenarioConfig& cfg, double altitude_m);

/// Day-time decision for one instant.
struct DayDecision {
    double altitude_m = 0.0;
    double airspeed_mps = 0.0;
    double transmit_w = 0.0;
    double available_w = 0.0;
    double propulsion_w = 0.0;
    double storage_setaside_w = 0.0;
    double sum_rate_bps = 0.0;  ///< literal network rate of the emitted tuple
    std::vector<noma::PowerAllocation> allocations;
    std::vector<double> objective_trace_bps;  ///< one entry per AO iteration
    int iterations = 0;
    bool converged = false;
    bool insufficient_power = false;
    bool storage_satisfied = true;
};

/// Runs the day-time alternating optimization at one instant. `draws` is
/// the instant's frozen fading realization; altitude changes inside the
/// loop only rescale the deterministic path-loss part.
DayDecision run_algorithm1(const scenario::ScenarioConfig& cfg,
                           const solar::DateTime& utc, double extinction,
                           const std::vector<std::vector<channel::UserDraw>>& draws,
                           double storage_setaside_w, double qos_norm);

/// Night-time decision: the minimum-propulsion operating point.
struct NightDecision {
    double altitude_m = 0.0;
    double airspeed_mps = 0.0;
    double propulsion_w = 0.0;
    std::vector<double> power_trace_w;  ///< per-iteration propulsion power
    int iterations = 0;
    bool converged = false;
};

/// Alternates the closed-form airspeed and altitude solutions until the
/// propulsion power settles. The altitude step is descent-safeguarded: the
/// published clamp (out-of-range stationary point -> h_max) is taken only
/// when it does not increase the objective, otherwise the convex
/// subproblem's boundary optimum applies. This keeps the iteration a true
/// alternating minimization (monotone, terminating) where the literal
/// clamp rule cycles between the box edges.
NightDecision run_algorithm2(const scenario::ScenarioConfig& cfg);

/// Per-instant record of a simulated day.
struct InstantRecord {
    int instant = 0;
    double hour_start_local = 0.0;
    bool is_day = false;
    double elevation_deg = 0.0;
    double altitude_m = 0.0;
    double airspeed_mps = 0.0;
    double available_w = 0.0;
    double required_w = 0.0;
    double transmit_w = 0.0;
    double storage_setaside_w = 0.0;
    int iterations = 0;
    bool converged = true;
    std::uint8_t flags = energy::kFlagNone;
    std::vector<double> rate_bps;  ///< network literal rate per configured QoS
    std::vector<double> objective_trace_bps;  ///< AO trace for the first QoS
    std::vector<noma::PowerAllocation> allocations;  ///< first QoS, emitted tuple
};

/// One full simulated day.
struct DayTrace {
    scenario::ScenarioDate date;
    double dt_hours = 1.0;
    int first_day_instant = -1;  ///< -1 when the sun never rises
    int last_day_instant = -1;
    NightDecision night;
    double night_transmit_pre_dawn_w = 0.0;
    double night_transmit_post_dusk_w = 0.0;
    std::vector<InstantRecord> instants;
    energy::Ledger ledger;
};

/// Simulates one 24-hour cycle: classifies instants by solar elevation,
/// plans the night flight and storage schedule, runs the day loop per
/// daylight instant and the fixed night budget otherwise, stepping the
/// battery throughout. Runtime shortfalls become ledger flags, never
/// exceptions.
DayTrace simulate_day(const scenario::ScenarioConfig& cfg,
                      const scenario::ScenarioDate& date);

}  // namespace haps::opt
