#include "haps/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace haps::opt {

namespace {

solar::DateTime utc_at(const scenario::ScenarioDate& date, double local_hour,
                       double longitude_deg) {
    const solar::DateTime midnight{date.year, date.month, date.day, 0.0};
    return solar::shifted(midnight, local_hour - longitude_deg / 15.0);
}

double harvested_at(const scenario::ScenarioConfig& cfg, double extinction,
                    double altitude_m, const solar::DateTime& utc) {
    solar::Context ctx = cfg.location;
    ctx.extinction = extinction;
    return solar::harvested_power(cfg.atmosphere, altitude_m, utc, ctx, cfg.panel);
}

}  // namespace

AllocationStep solve_p1a(const scenario::ScenarioConfig& cfg,
                         const std::vector<std::vector<channel::UserDraw>>& draws,
                         double altitude_m, double transmit_w, double qos_norm) {
    if (!(transmit_w > 0.0)) throw std::domain_error("transmit budget must be > 0");
    AllocationStep step;
    const double per_cell = cfg.feedline_fraction * transmit_w / cfg.topology.num_cells;
    const std::vector<double> powers(cfg.topology.num_cells, per_cell);
    step.links = channel::compose_links(draws, cfg.topology, cfg.pattern, cfg.link,
                                        altitude_m, powers);
    step.allocations.reserve(step.links.size());
    for (std::size_t m = 0; m < step.links.size(); ++m) {
        std::vector<double> composites(step.links[m].size());
        for (std::size_t l = 0; l < composites.size(); ++l)
            composites[l] = step.links[m][l].composite;
        if (cfg.baseline_mode) {
            const int k = static_cast<int>(composites.size());
            noma::PowerAllocation eq;
            eq.cell = static_cast<int>(m);
            eq.regime = noma::Regime::kFeasibleAllQos;
            eq.qos_norm = 0.0;
            eq.slack = 0.0;
            eq.fractions.assign(k, 1.0 / k);
            eq.qos_fractions = eq.fractions;
            eq.qos_met.assign(k, false);
            double cell_norm = 0.0;
            for (int l = 0; l < k; ++l) {
                const double g = noma::sinr(eq.fractions, composites, l);
                const double r = std::log2(1.0 + g);
                cell_norm += r;
                eq.qos_met[l] = r >= qos_norm;
            }
            eq.cell_rate_norm = cell_norm;
            step.allocations.push_back(std::move(eq));
        } else {
            step.allocations.push_back(
                noma::allocate(composites, qos_norm, static_cast<int>(m)));
        }
    }
    step.report = noma::evaluate_network(step.links, step.allocations,
                                         cfg.link.bandwidth_hz);
    return step;
}

AltitudeChoice solve_p1b(const scenario::ScenarioConfig& cfg,
                         const solar::DateTime& utc, double extinction,
                         double storage_setaside_w) {
    const auto rho = cfg.density_model();
    constexpr double kStepM = 100.0;
    double best_net = -std::numeric_limits<double>::infinity();
    double best_h = cfg.bounds.h_min_m;
    for (double h = cfg.bounds.h_min_m;; h += kStepM) {
        h = std::min(h, cfg.bounds.h_max_m);
        const double v = aero::optimal_speed(cfg.aircraft, rho, h, cfg.bounds);
        const double preq = aero::required_power(cfg.aircraft, rho, h, v);
        const double pa = harvested_at(cfg, extinction, h, utc);
        const double margin = pa - preq - storage_setaside_w;
        if (margin >= 0.0) return AltitudeChoice{h, true};
        if (pa - preq > best_net) {
            best_net = pa - preq;
            best_h = h;
        }
        if (h >= cfg.bounds.h_max_m) break;
    }
    return AltitudeChoice{best_h, false};
}

double solve_p1c(const scenario::ScenarioConfig& cfg, double altitude_m) {
    return aero::optimal_speed(cfg.aircraft, cfg.density_model(), altitude_m, cfg.bounds);
}

DayDecision run_algorithm1(const scenario::ScenarioConfig& cfg,
                           const solar::DateTime& utc, double extinction,
                           const std::vector<std::vector<channel::UserDraw>>& draws,
                           double storage_setaside_w, double qos_norm) {
    DayDecision d;
    d.storage_setaside_w = storage_setaside_w;
    const auto rho = cfg.density_model();
    const double bandwidth = cfg.link.bandwidth_hz;
    double rate_prev_norm = 0.0;
    for (int i = 1; i <= cfg.max_iterations; ++i) {
        if (cfg.baseline_mode) {
            d.altitude_m = cfg.baseline_altitude_m;
            d.airspeed_mps = std::min(
                cfg.baseline_speed_factor *
                    aero::stall_speed(cfg.aircraft, rho, d.altitude_m),
                cfg.bounds.v_max_mps);
            d.storage_satisfied = true;
        } else {
            const AltitudeChoice hc = solve_p1b(cfg, utc, extinction, storage_setaside_w);
            d.altitude_m = hc.altitude_m;
            d.storage_satisfied = hc.storage_satisfied;
            d.airspeed_mps = solve_p1c(cfg, d.altitude_m);
        }
        d.propulsion_w = aero::propulsion_power(cfg.aircraft, rho, d.altitude_m,
                                                d.airspeed_mps);
        d.available_w = harvested_at(cfg, extinction, d.altitude_m, utc);
        d.transmit_w = d.available_w - d.propulsion_w -
                       cfg.aircraft.accessory_power_w - storage_setaside_w;

        double rate_norm = 0.0;
        if (d.transmit_w > 0.0) {
            d.insufficient_power = false;
            AllocationStep step = solve_p1a(cfg, draws, d.altitude_m, d.transmit_w, qos_norm);
            d.allocations = std::move(step.allocations);
            d.sum_rate_bps = step.report.network_rate_bps;
            rate_norm = d.sum_rate_bps / bandwidth;
        } else {
            d.insufficient_power = true;
            d.transmit_w = 0.0;
            d.allocations.clear();
            d.sum_rate_bps = 0.0;
        }
        d.objective_trace_bps.push_back(d.sum_rate_bps);
        d.iterations = i;
        if (std::fabs(rate_norm - rate_prev_norm) < cfg.tolerance) {
            d.converged = true;
            break;
        }
        rate_prev_norm = rate_norm;
    }
    return d;
}

NightDecision run_algorithm2(const scenario::ScenarioConfig& cfg) {
    NightDecision n;
    const auto rho = cfg.density_model();
    if (cfg.baseline_mode) {
        n.altitude_m = cfg.baseline_altitude_m;
        n.airspeed_mps = std::min(cfg.baseline_speed_factor *
                                      aero::stall_speed(cfg.aircraft, rho, n.altitude_m),
                                  cfg.bounds.v_max_mps);
        n.propulsion_w =
            aero::propulsion_power(cfg.aircraft, rho, n.altitude_m, n.airspeed_mps);
        n.power_trace_w = {n.propulsion_w};
        n.iterations = 1;
        n.converged = true;
        return n;
    }
    double h = 0.5 * (cfg.bounds.h_min_m + cfg.bounds.h_max_m);
    double p_prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= cfg.max_iterations; ++i) {
        const double v = aero::optimal_speed(cfg.aircraft, rho, h, cfg.bounds);
        const double p_v = aero::propulsion_power(cfg.aircraft, rho, h, v);
        // Altitude step: published clamp first, convex boundary projection
        // as the descent fallback.
        double h_next = h;
        double p_next = p_v;
        const double h_clamped = aero::optimal_altitude(cfg.aircraft, rho, v, cfg.bounds);
        const double p_clamped = aero::propulsion_power(cfg.aircraft, rho, h_clamped, v);
        if (p_clamped <= p_v) {
            h_next = h_clamped;
            p_next = p_clamped;
        } else {
            const double h_proj = std::clamp(aero::stationary_altitude(cfg.aircraft, rho, v),
                                             cfg.bounds.h_min_m, cfg.bounds.h_max_m);
            const double p_proj = aero::propulsion_power(cfg.aircraft, rho, h_proj, v);
            if (p_proj <= p_v) {
                h_next = h_proj;
                p_next = p_proj;
            }
        }
        h = h_next;
        n.altitude_m = h;
        n.airspeed_mps = v;
        n.propulsion_w = p_next;
        n.power_trace_w.push_back(p_next);
        n.iterations = i;
        if (std::fabs(p_next - p_prev) < cfg.tolerance) {
            n.converged = true;
            break;
        }
        p_prev = p_next;
    }
    return n;
}

DayTrace simulate_day(const scenario::ScenarioConfig& cfg,
                      const scenario::ScenarioDate& date) {
    cfg.validate();
    DayTrace trace;
    trace.date = date;
    trace.dt_hours = cfg.step_hours;
    const int steps = cfg.steps_per_day();
    const double dt_s = cfg.step_hours * 3600.0;
    const auto rho = cfg.density_model();
    const double accessory = cfg.aircraft.accessory_power_w;

    // Instant classification at interval midpoints.
    std::vector<solar::DateTime> utcs(steps);
    std::vector<double> elevations(steps);
    std::vector<bool> is_day(steps);
    solar::Context ctx = cfg.location;
    ctx.extinction = date.extinction;
    for (int n = 0; n < steps; ++n) {
        const double local_mid = (n + 0.5) * cfg.step_hours;
        utcs[n] = utc_at(date, local_mid, cfg.location.longitude_deg);
        elevations[n] = solar::solar_elevation(ctx, utcs[n]);
        is_day[n] = elevations[n] > 0.0;
        if (is_day[n]) {
            if (trace.first_day_instant < 0) trace.first_day_instant = n;
            trace.last_day_instant = n;
        }
    }
    const int d1 = trace.first_day_instant;
    const int d2 = trace.last_day_instant;
    int day_count = 0;
    for (int n = 0; n < steps; ++n) day_count += is_day[n] ? 1 : 0;
    const int night_count = steps - day_count;

    // Night flight plan and storage need for the coming night.
    trace.night = run_algorithm2(cfg);
    const double night_load_w =
        trace.night.propulsion_w + accessory + cfg.night_transmit_target_w;
    const double need_j =
        std::min(cfg.battery.capacity_j,
                 night_count * dt_s * night_load_w / cfg.battery.discharge_eff);

    // Battery start: configured, else the steady-state midnight level that
    // funds the pre-dawn leg at the planned budget.
    const int predawn = d1 < 0 ? steps : d1;
    double energy =
        cfg.initial_energy_j >= 0.0
            ? std::min(cfg.initial_energy_j, cfg.battery.capacity_j)
            : std::min(cfg.battery.capacity_j,
                       night_load_w * predawn * dt_s / cfg.battery.discharge_eff);
    trace.ledger.initial_energy_j = energy;

    // Deterministic surplus forecast for the set-aside schedule, taken at
    // the expected day-time operating point.
    const double h_day = cfg.baseline_mode ? cfg.baseline_altitude_m : cfg.bounds.h_min_m;
    const double v_day =
        cfg.baseline_mode
            ? std::min(cfg.baseline_speed_factor * aero::stall_speed(cfg.aircraft, rho, h_day),
                       cfg.bounds.v_max_mps)
            : aero::optimal_speed(cfg.aircraft, rho, h_day, cfg.bounds);
    const double preq_day = aero::required_power(cfg.aircraft, rho, h_day, v_day);
    std::vector<double> surplus_fc(steps, 0.0);
    for (int n = 0; n < steps; ++n) {
        if (!is_day[n]) continue;
        surplus_fc[n] =
            std::max(0.0, harvested_at(cfg, date.extinction, h_day, utcs[n]) - preq_day);
    }

    std::vector<double> qos_norm(cfg.qos_mbps.size());
    for (std::size_t q = 0; q < cfg.qos_mbps.size(); ++q)
        qos_norm[q] = cfg.qos_mbps[q] * 1e6 / cfg.link.bandwidth_hz;

    bool predawn_budget_set = false, postdusk_budget_set = false;
    for (int n = 0; n < steps; ++n) {
        InstantRecord rec;
        rec.instant = n;
        rec.hour_start_local = n * cfg.step_hours;
        rec.is_day = is_day[n];
        rec.elevation_deg = elevations[n];
        rec.rate_bps.assign(cfg.qos_mbps.size(), 0.0);

        double pa = 0.0, preq = 0.0, pt = 0.0;
        if (!is_day[n]) {
            // Fixed budget per night segment.
            if (n < d1 || d1 < 0) {
                if (!predawn_budget_set) {
                    const double remaining = ((d1 < 0 ? steps : d1) - n) * cfg.step_hours;
                    trace.night_transmit_pre_dawn_w = energy::night_budget(
                        energy, remaining, trace.night.propulsion_w, accessory, cfg.battery);
                    predawn_budget_set = true;
                }
                pt = trace.night_transmit_pre_dawn_w;
            } else {
                if (!postdusk_budget_set) {
                    trace.night_transmit_post_dusk_w = energy::night_budget(
                        energy, night_count * cfg.step_hours, trace.night.propulsion_w,
                        accessory, cfg.battery);
                    postdusk_budget_set = true;
                }
                pt = trace.night_transmit_post_dusk_w;
            }
            rec.altitude_m = trace.night.altitude_m;
            rec.airspeed_mps = trace.night.airspeed_mps;
            rec.iterations = trace.night.iterations;
            rec.converged = trace.night.converged;
            preq = trace.night.propulsion_w + accessory;
            if (pt > 0.0) {
                Rng rng(cfg.seed, static_cast<std::uint64_t>(n));
                const auto draws = channel::draw_cells(cfg.topology, rng);
                for (std::size_t q = 0; q < qos_norm.size(); ++q) {
                    AllocationStep step =
                        solve_p1a(cfg, draws, rec.altitude_m, pt, qos_norm[q]);
                    rec.rate_bps[q] = step.report.network_rate_bps;
                    if (q == 0) rec.allocations = std::move(step.allocations);
                }
            } else {
                rec.flags |= energy::kFlagNoTransmit;
            }
        } else {
            const double need_rem = std::max(0.0, need_j - energy);
            double future_j = 0.0;
            for (int k = n; k <= d2; ++k) future_j += surplus_fc[k] * dt_s;
            double reserve_frac = 0.0;
            if (need_rem > 0.0) {
                reserve_frac =
                    future_j > 0.0
                        ? std::min(1.0, need_rem / cfg.battery.charge_eff / future_j)
                        : 1.0;
            }
            const double setaside = reserve_frac * surplus_fc[n];
            Rng rng(cfg.seed, static_cast<std::uint64_t>(n));
            const auto draws = channel::draw_cells(cfg.topology, rng);
            DayDecision first;
            for (std::size_t q = 0; q < qos_norm.size(); ++q) {
                DayDecision d = run_algorithm1(cfg, utcs[n], date.extinction, draws,
                                               setaside, qos_norm[q]);
                rec.rate_bps[q] = d.sum_rate_bps;
                if (q == 0) first = std::move(d);
            }
            rec.altitude_m = first.altitude_m;
            rec.airspeed_mps = first.airspeed_mps;
            rec.iterations = first.iterations;
            rec.converged = first.converged;
            rec.storage_setaside_w = setaside;
            rec.objective_trace_bps = first.objective_trace_bps;
            rec.allocations = std::move(first.allocations);
            pa = first.available_w;
            preq = first.propulsion_w + accessory;
            pt = first.transmit_w;
            if (first.insufficient_power) rec.flags |= energy::kFlagNoTransmit;
            if (!first.storage_satisfied) rec.flags |= energy::kFlagStorageShort;
        }

        rec.available_w = pa;
        rec.required_w = preq;
        rec.transmit_w = pt;

        energy::LedgerRow row;
        row.hour = n;
        row.available_w = pa;
        row.required_w = preq;
        row.transmit_w = pt;
        row.net_power_w = energy::net_power(pa, preq, pt);
        std::uint8_t flags = rec.flags;
        energy = energy::step_battery(energy, row.net_power_w, dt_s, cfg.battery, &flags);
        row.energy_j = energy;
        row.flags = flags;
        rec.flags = flags;
        trace.ledger.rows.push_back(row);
        trace.instants.push_back(std::move(rec));
    }
    return trace;
}

}  // namespace haps::opt
