#include "haps/sweep.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace haps::sweep {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write output file: " + p.string());
    return out;
}

void write_transmit_csv(const opt::DayTrace& t, int num_cells, double feedline,
                        const fs::path& p) {
    auto out = open_out(p);
    out << "instant,hour_local_start,is_day,P_T_W,P_m_W\n";
    for (const auto& r : t.instants) {
        const double pm = feedline * r.transmit_w / num_cells;
        out << r.instant << ',' << fmt(r.hour_start_local) << ',' << (r.is_day ? 1 : 0)
            << ',' << fmt(r.transmit_w) << ',' << fmt(pm) << '\n';
    }
}

void write_rate_csv(const opt::DayTrace& t, const std::vector<double>& qos,
                    const fs::path& p) {
    auto out = open_out(p);
    out << "instant,hour_local_start,is_day";
    for (double q : qos) out << ",sum_rate_bps_qos_" << fmt(q) << "_Mbps";
    out << '\n';
    for (const auto& r : t.instants) {
        out << r.instant << ',' << fmt(r.hour_start_local) << ',' << (r.is_day ? 1 : 0);
        for (double v : r.rate_bps) out << ',' << fmt(v);
        out << '\n';
    }
}

void write_flight_csv(const opt::DayTrace& t, const fs::path& p) {
    auto out = open_out(p);
    out << "instant,hour_local_start,is_day,altitude_m,airspeed_mps\n";
    for (const auto& r : t.instants) {
        out << r.instant << ',' << fmt(r.hour_start_local) << ',' << (r.is_day ? 1 : 0)
            << ',' << fmt(r.altitude_m) << ',' << fmt(r.airspeed_mps) << '\n';
    }
}

void write_energy_csv(const opt::DayTrace& t, const fs::path& p) {
    auto out = open_out(p);
    out << "instant,hour_local_start,E_b_J,P_net_W,P_a_W,P_req_W,P_T_W,flags\n";
    for (std::size_t i = 0; i < t.ledger.rows.size(); ++i) {
        const auto& row = t.ledger.rows[i];
        out << row.hour << ',' << fmt(t.instants[i].hour_start_local) << ','
            << fmt(row.energy_j) << ',' << fmt(row.net_power_w) << ','
            << fmt(row.available_w) << ',' << fmt(row.required_w) << ','
            << fmt(row.transmit_w) << ',' << static_cast<int>(row.flags) << '\n';
    }
}

void write_convergence_csv(const opt::DayTrace& t, const fs::path& p) {
    auto out = open_out(p);
    out << "instant,phase,iteration,objective\n";
    for (const auto& r : t.instants) {
        for (std::size_t i = 0; i < r.objective_trace_bps.size(); ++i) {
            out << r.instant << ",day_sum_rate_bps," << (i + 1) << ','
                << fmt(r.objective_trace_bps[i]) << '\n';
        }
    }
    for (std::size_t i = 0; i < t.night.power_trace_w.size(); ++i) {
        out << -1 << ",night_propulsion_W," << (i + 1) << ','
            << fmt(t.night.power_trace_w[i]) << '\n';
    }
}

}  // namespace

SweepResult run_sweep(const scenario::ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    SweepResult result;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);

    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016" PRIx64, scenario::config_hash(cfg));

    for (const auto& date : cfg.dates) {
        opt::DayTrace trace = opt::simulate_day(cfg, date);
        const std::string stem = date.label;
        const fs::path base = fs::path(out_dir);
        const fs::path f_power = base / (stem + "_transmit_power.csv");
        const fs::path f_rate = base / (stem + "_sum_rate.csv");
        const fs::path f_flight = base / (stem + "_altitude_speed.csv");
        const fs::path f_energy = base / (stem + "_energy.csv");
        const fs::path f_conv = base / (stem + "_convergence.csv");
        const fs::path f_manifest = base / (stem + "_manifest.json");
        write_transmit_csv(trace, cfg.topology.num_cells, cfg.feedline_fraction, f_power);
        write_rate_csv(trace, cfg.qos_mbps, f_rate);
        write_flight_csv(trace, f_flight);
        write_energy_csv(trace, f_energy);
        write_convergence_csv(trace, f_conv);

        json manifest;
        manifest["version"] = kVersion;
        manifest["seed"] = cfg.seed;
        manifest["config_hash"] = hash_hex;
        manifest["date"] = {{"label", date.label}, {"year", date.year},
                            {"month", date.month}, {"day", date.day},
                            {"extinction", date.extinction}};
        manifest["baseline_mode"] = cfg.baseline_mode;
        manifest["overrides"] = cfg.override_log;
        manifest["night_plan"] = {{"altitude_m", trace.night.altitude_m},
                                  {"airspeed_mps", trace.night.airspeed_mps},
                                  {"propulsion_w", trace.night.propulsion_w},
                                  {"iterations", trace.night.iterations},
                                  {"converged", trace.night.converged}};
        manifest["ledger"] = {{"initial_energy_j", trace.ledger.initial_energy_j},
                              {"final_energy_j", trace.ledger.final_energy_j()},
                              {"deficit_instants", trace.ledger.deficit_count()},
                              {"saturated_instants", trace.ledger.saturation_count()}};
        manifest["files"] = {f_power.filename().string(), f_rate.filename().string(),
                             f_flight.filename().string(), f_energy.filename().string(),
                             f_conv.filename().string()};
        auto mout = open_out(f_manifest);
        mout << manifest.dump(2) << '\n';

        for (const auto& f : {f_power, f_rate, f_flight, f_energy, f_conv, f_manifest})
            result.written_files.push_back(f.string());
        result.traces.push_back(std::move(trace));
    }
    return result;
}

GainReport compare_baseline(const scenario::ScenarioConfig& cfg) {
    scenario::ScenarioConfig optimized = cfg;
    optimized.baseline_mode = false;
    scenario::ScenarioConfig baseline = cfg;
    baseline.baseline_mode = true;

    GainReport report;
    report.qos_mbps = cfg.qos_mbps;
    std::vector<double> opt_total(cfg.qos_mbps.size(), 0.0);
    std::vector<double> base_total(cfg.qos_mbps.size(), 0.0);
    for (const auto& date : cfg.dates) {
        const opt::DayTrace ot = opt::simulate_day(optimized, date);
        const opt::DayTrace bt = opt::simulate_day(baseline, date);
        int base_out = 0, opt_out = 0;
        for (const auto& r : bt.instants)
            base_out += (r.flags & energy::kFlagNoTransmit) ? 1 : 0;
        for (const auto& r : ot.instants)
            opt_out += (r.flags & energy::kFlagNoTransmit) ? 1 : 0;
        for (std::size_t q = 0; q < cfg.qos_mbps.size(); ++q) {
            GainEntry e;
            e.date_label = date.label;
            e.qos_mbps = cfg.qos_mbps[q];
            for (const auto& r : ot.instants) e.optimized_rate_sum_bps += r.rate_bps[q];
            for (const auto& r : bt.instants) e.baseline_rate_sum_bps += r.rate_bps[q];
            e.relative_gain = e.baseline_rate_sum_bps > 0.0
                                  ? (e.optimized_rate_sum_bps - e.baseline_rate_sum_bps) /
                                        e.baseline_rate_sum_bps
                                  : 0.0;
            e.baseline_no_transmit_instants = base_out;
            e.optimized_no_transmit_instants = opt_out;
            opt_total[q] += e.optimized_rate_sum_bps;
            base_total[q] += e.baseline_rate_sum_bps;
            report.entries.push_back(std::move(e));
        }
    }
    report.overall_gain.resize(cfg.qos_mbps.size(), 0.0);
    for (std::size_t q = 0; q < cfg.qos_mbps.size(); ++q) {
        report.overall_gain[q] =
            base_total[q] > 0.0 ? (opt_total[q] - base_total[q]) / base_total[q] : 0.0;
    }
    return report;
}

void write_gain_report(const GainReport& report, const std::string& out_dir,
                       std::vector<std::string>* written) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    const fs::path p = fs::path(out_dir) / "gain_report.csv";
    auto out = open_out(p);
    out << "date,qos_mbps,optimized_rate_sum_bps,baseline_rate_sum_bps,relative_gain,"
           "baseline_no_transmit_instants,optimized_no_transmit_instants\n";
    for (const auto& e : report.entries) {
        out << e.date_label << ',' << fmt(e.qos_mbps) << ','
            << fmt(e.optimized_rate_sum_bps) << ',' << fmt(e.baseline_rate_sum_bps) << ','
            << fmt(e.relative_gain) << ',' << e.baseline_no_transmit_instants << ','
            << e.optimized_no_transmit_instants << '\n';
    }
    if (written) written->push_back(p.string());
}

}  // namespace haps::sweep
