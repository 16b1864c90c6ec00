// Scenario orchestration: per-date sweeps with plot-ready CSV emission and
// a reproducibility manifest, and the optimized-vs-unoptimized gain report.
#pragma once

#include <string>
#include <vector>

#include "haps/optimizer.hpp"

namespace haps::sweep {

inline constexpr const char* kVersion = "0.1.0";

struct SweepResult {
    std::vector<opt::DayTrace> traces;       ///< one per configured date
    std::vector<std::string> written_files;  ///< absolute or outdir-relative paths
};

/// Runs simulate_day for every configured date and writes, per date:
/// transmit power, sum rate, altitude/speed and energy-ledger CSV series
/// plus a JSON run manifest (seed, config hash, version, override log).
/// I/O failures throw std::runtime_error with the offending path.
SweepResult run_sweep(const scenario::ScenarioConfig& cfg, const std::string& out_dir);

struct GainEntry {
    std::string date_label;
    double qos_mbps = 0.0;
    double optimized_rate_sum_bps = 0.0;  ///< day-total network rate
    double baseline_rate_sum_bps = 0.0;
    double relative_gain = 0.0;           ///< (opt - base) / base
    int baseline_no_transmit_instants = 0;
    int optimized_no_transmit_instants = 0;
};

struct GainReport {
    std::vector<GainEntry> entries;        ///< per date x QoS
    std::vector<double> qos_mbps;
    std::vector<double> overall_gain;      ///< per QoS, rates summed over dates
};

/// Runs the optimized system and the fixed-flight equal-power baseline on
/// identical seeds and reports relative sum-rate gains per QoS target.
GainReport compare_baseline(const scenario::ScenarioConfig& cfg);

/// Writes the gain report as CSV next to the sweep outputs.
void write_gain_report(const GainReport& report, const std::string& out_dir,
                       std::vector<std::string>* written = nullptr);

}  // namespace haps::sweep
