// Command-line front end: scenario sweeps, baseline comparison, config
// validation and brute-force oracle audits.
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "haps/sweep.hpp"
#include "oracles.hpp"

namespace {

haps::scenario::ScenarioConfig load(const std::string& config_path,
                                    const std::string& date_spec, double qos_mbps,
                                    bool baseline, std::uint64_t seed, bool seed_set) {
    using haps::scenario::ScenarioConfig;
    ScenarioConfig cfg = config_path.empty()
                             ? haps::scenario::load_config_text("")
                             : haps::scenario::load_config_file(config_path);
    if (!date_spec.empty() && date_spec != "all") {
        cfg.dates = {haps::scenario::resolve_date(date_spec, 0.29, 0.465)};
        cfg.override_log.push_back("cli: date = " + date_spec);
    }
    if (qos_mbps > 0.0) {
        cfg.qos_mbps = {qos_mbps};
        cfg.override_log.push_back("cli: qos_mbps = " + std::to_string(qos_mbps));
    }
    if (baseline) {
        cfg.baseline_mode = true;
        cfg.override_log.push_back("cli: baseline mode");
    }
    if (seed_set) {
        cfg.seed = seed;
        cfg.override_log.push_back("cli: seed = " + std::to_string(seed));
    }
    cfg.validate();
    return cfg;
}

int run_oracles(const haps::scenario::ScenarioConfig& cfg) {
    using namespace haps;
    const auto rho = cfg.density_model();
    std::printf("oracle audit (config hash %016" PRIx64 ")\n",
                scenario::config_hash(cfg));

    for (double h : {cfg.bounds.h_min_m, 0.5 * (cfg.bounds.h_min_m + cfg.bounds.h_max_m),
                     cfg.bounds.h_max_m}) {
        const double vm = aero::minimum_power_speed(cfg.aircraft, rho, h);
        const auto sweep = oracles::sweep_min_power_speed(cfg.aircraft, rho, h, 2.0,
                                                          cfg.bounds.v_max_mps, 10000);
        std::printf("  V_m(%5.0f m) = %8.4f m/s   sweep argmin = %8.4f m/s (step %.4f)\n",
                    h, vm, sweep.arg, sweep.step);
    }
    for (double v : {26.0, 30.0, 35.0}) {
        const double hm = aero::stationary_altitude(cfg.aircraft, rho, v);
        const auto sweep = oracles::sweep_min_power_altitude(
            cfg.aircraft, rho, v, cfg.atmosphere.h_min_valid(),
            cfg.atmosphere.h_max_valid(), 10000);
        std::printf("  H_m(V=%4.1f) = %9.2f m   sweep argmin = %9.2f m (step %.2f)\n", v,
                    hm, sweep.arg, sweep.step);
    }
    const auto grid = oracles::night_grid_argmin(cfg.aircraft, rho, cfg.bounds, 200);
    const auto night = opt::run_algorithm2(cfg);
    std::printf("  night 200x200 grid argmin: H=%9.2f m V=%7.4f m/s P=%9.3f W\n",
                grid.altitude_m, grid.airspeed_mps, grid.power_w);
    std::printf("  night alternating optimum: H=%9.2f m V=%7.4f m/s P=%9.3f W (%d iters%s)\n",
                night.altitude_m, night.airspeed_mps, night.propulsion_w, night.iterations,
                night.converged ? "" : ", NOT converged");

    Rng rng(cfg.seed, 0xA11C);
    int checked = 0, mismatched = 0, below = 0;
    while (checked < 50) {
        const int k = 1 + static_cast<int>(rng.next_u64() % 3);
        std::vector<double> a(k);
        for (auto& x : a) x = std::exp(rng.uniform(std::log(0.005), std::log(2.0)));
        std::sort(a.rbegin(), a.rend());
        const double qos = rng.uniform(0.02, 1.5);
        const double c = std::exp2(qos) - 1.0;
        double s1 = 0.0, w = 1.0;
        for (double x : a) {
            s1 += c * w * x;
            w *= std::exp2(qos);
        }
        if (std::fabs(s1 - 1.0) < 0.05) continue;
        ++checked;
        const auto alloc = noma::allocate(a, qos);
        const auto gs = oracles::grid_search_allocation(a, qos, 1e-3);
        const bool closed_feasible = alloc.regime == noma::Regime::kFeasibleAllQos;
        if (closed_feasible != gs.feasible) ++mismatched;
        if (gs.feasible && closed_feasible &&
            alloc.cell_rate_norm < gs.best_rate_norm - 0.05)
            ++below;
    }
    std::printf("  allocation vs grid search: %d instances, %d verdict mismatches, "
                "%d rate shortfalls\n", checked, mismatched, below);
    return (mismatched == 0 && below == 0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solar high-altitude platform flight/communication co-design simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", date_spec;
    double qos_mbps = -1.0;
    bool baseline = false;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (defaults when omitted)");
        sub->add_option("--date", date_spec, "ws | ss | YYYY-MM-DD | all (default all)");
        sub->add_option("--qos", qos_mbps, "single QoS target in Mbit/s");
        sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_flag("--baseline", baseline, "fixed-flight equal-power baseline mode");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the per-date scenario sweep");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "optimized vs unoptimized gain report");
    add_common(compare_cmd);
    compare_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* validate_cmd =
        app.add_subcommand("validate-config", "parse, validate and echo a config");
    add_common(validate_cmd);

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "run the brute-force test oracles for audit");
    add_common(oracle_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load(config_path, date_spec, qos_mbps, baseline, seed, seed_set);
        if (sweep_cmd->parsed()) {
            const auto result = haps::sweep::run_sweep(cfg, out_dir);
            for (const auto& f : result.written_files) std::cout << f << '\n';
            for (const auto& t : result.traces) {
                std::printf("%s: %d daylight instants, E %.1f -> %.1f MJ, "
                            "%d deficit, %d saturated\n",
                            t.date.label.c_str(),
                            t.last_day_instant - t.first_day_instant + 1,
                            t.ledger.initial_energy_j / 1e6,
                            t.ledger.final_energy_j() / 1e6, t.ledger.deficit_count(),
                            t.ledger.saturation_count());
            }
            return 0;
        }
        if (compare_cmd->parsed()) {
            const auto report = haps::sweep::compare_baseline(cfg);
            std::vector<std::string> files;
            haps::sweep::write_gain_report(report, out_dir, &files);
            for (const auto& f : files) std::cout << f << '\n';
            std::printf("%-6s %-10s %-14s %-14s %s\n", "date", "qos_Mbps", "optimized_bps",
                        "baseline_bps", "gain");
            for (const auto& e : report.entries) {
                std::printf("%-6s %-10.3g %-14.6g %-14.6g %+.2f%%\n", e.date_label.c_str(),
                            e.qos_mbps, e.optimized_rate_sum_bps, e.baseline_rate_sum_bps,
                            100.0 * e.relative_gain);
            }
            for (std::size_t q = 0; q < report.qos_mbps.size(); ++q) {
                std::printf("overall gain @ %.3g Mbps: %+.2f%%\n", report.qos_mbps[q],
                            100.0 * report.overall_gain[q]);
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            std::cout << haps::scenario::to_json(cfg) << '\n';
            std::printf("config ok; hash %016" PRIx64 "\n", haps::scenario::config_hash(cfg));
            for (const auto& line : cfg.override_log)
                std::cout << "override: " << line << '\n';
            return 0;
        }
        if (oracle_cmd->parsed()) {
            return run_oracles(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
