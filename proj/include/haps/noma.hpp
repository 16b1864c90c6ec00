// Downlink NOMA power allocation and rate evaluation under successive
// interference cancellation: the closed-form minimum-power allocation with
// full QoS, its partial-coverage fallback when the power budget cannot
// serve every user, and the network rate assembler.
#pragma once

#include <vector>

#include "haps/channel.hpp"

namespace haps::noma {

enum class Regime {
    kFeasibleAllQos,  ///< every user meets its QoS target
    kPartialQos,      ///< users below the cutoff get no (or best-effort) power
};

/// Power split of one cell over its ordered users.
///
/// `fractions` is the transmitted split (sums to one); `qos_fractions` is
/// the underlying minimum-power recursion before the slack power is merged
/// onto the strongest user. Keeping both lets rate reports show the
/// guarantee-level rates next to the literal post-merge SINRs, which
/// differ: the merged slack interferes with earlier decoders in the strict
/// reading of the SINR equation while the closed-form rate treats it as
/// already cancelled.
struct PowerAllocation {
    int cell = 0;
    Regime regime = Regime::kFeasibleAllQos;
    int cutoff_user = 0;  ///< first served ordered index in partial regime, else 0
    double qos_norm = 0.0;        ///< per-user QoS target [bit/s/Hz]
    double slack = 0.0;           ///< leftover fraction merged onto the bonus user
    std::vector<double> fractions;      ///< transmitted alpha, sums to 1
    std::vector<double> qos_fractions;  ///< minimum-power recursion alpha-hat
    double cell_rate_norm = 0.0;  ///< closed-form cell rate [bit/s/Hz]
    std::vector<bool> qos_met;    ///< per ordered user

    /// Guarantee-level per-user rates [bit/s/Hz]: exactly the QoS target for
    /// served users, target + slack bonus for the bonus user, zero below the
    /// cutoff. Sums to cell_rate_norm.
    std::vector<double> guarantee_rates_norm(const std::vector<double>& composites) const;
};

/// Literal SINR of ordered user `l` under allocation `alpha`:
/// alpha_l / (sum_{k>l} alpha_k + A_l). Stronger-ordered users are assumed
/// cancelled, weaker ones add interference.
/// Throws std::domain_error if `composites` is not sorted decreasing.
double sinr(const std::vector<double>& alpha, const std::vector<double>& composites,
            int ordered_index);

/// Shannon rate [bit/s] of an SINR over bandwidth B.
double rate(double sinr_value, double bandwidth_hz);

/// Closed-form allocation when the full-QoS condition holds. The recursion
/// gives each user the minimum power for exactly the target rate; leftover
/// power is merged onto the last (strongest) user. Returns false (leaving
/// `out` untouched) when the budget is insufficient, in which case
/// allocate_partial applies.
/// Pre: composites sorted decreasing, all positive; qos_norm >= 0.
bool allocate_feasible(const std::vector<double>& composites, double qos_norm,
                       PowerAllocation& out);

/// Partial-coverage allocation: locates the unique cutoff user u where the
/// tail of the minimum-power recursion first exceeds the unit budget, gives
/// the users above the cutoff their QoS power, the cutoff user the
/// remainder, and earlier users nothing.
/// Pre: the full-QoS condition fails.
PowerAllocation allocate_partial(const std::vector<double>& composites, double qos_norm);

/// Dispatcher: feasibility test then the matching branch.
PowerAllocation allocate(const std::vector<double>& composites, double qos_norm, int cell = 0);

/// Per-user and aggregate rate report for one network snapshot.
struct RateReport {
    struct UserRate {
        int cell;
        int ordered_index;
        int user;              ///< original draw index
        double literal_rate_bps;    ///< strict SINR evaluation of the sent split
        double guarantee_rate_bps;  ///< closed-form accounting (QoS layers)
        bool qos_met;
    };
    std::vector<UserRate> users;
    std::vector<double> cell_rate_bps;  ///< literal per-cell sums
    double network_rate_bps = 0.0;      ///< literal network sum
};

/// Assembles rates for ordered links and one allocation per cell.
/// Throws std::domain_error on shape mismatches.
RateReport evaluate_network(const std::vector<std::vector<channel::UserLink>>& links,
                            const std::vector<PowerAllocation>& allocations,
                            double bandwidth_hz);

}  // namespace haps::noma
