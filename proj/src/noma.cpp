#include "haps/noma.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace haps::noma {

namespace {

void require_sorted_positive(const std::vector<double>& a) {
    if (a.empty()) throw std::domain_error("composite vector is empty");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0)) throw std::domain_error("composites must be > 0");
        if (i > 0 && a[i] > a[i - 1] + 1e-15)
            throw std::domain_error("composites must be ordered decreasing");
    }
}

}  // namespace

double sinr(const std::vector<double>& alpha, const std::vector<double>& composites,
            int l) {
    require_sorted_positive(composites);
    if (alpha.size() != composites.size())
        throw std::domain_error("allocation/composite size mismatch");
    if (l < 0 || l >= static_cast<int>(alpha.size()))
        throw std::domain_error("user index out of range");
    double interference = 0.0;
    for (std::size_t k = l + 1; k < alpha.size(); ++k) interference += alpha[k];
    return alpha[l] / (interference + composites[l]);
}

double rate(double sinr_value, double bandwidth_hz) {
    if (sinr_value < 0.0) throw std::domain_error("SINR must be >= 0");
    return bandwidth_hz * std::log2(1.0 + sinr_value);
}

std::vector<double> PowerAllocation::guarantee_rates_norm(
    const std::vector<double>& composites) const {
    const int k = static_cast<int>(fractions.size());
    std::vector<double> rates(k, 0.0);
    for (int l = cutoff_user; l < k; ++l) rates[l] = qos_norm;
    if (regime == Regime::kFeasibleAllQos) {
        rates[k - 1] = qos_norm + std::log2(1.0 + slack / composites[k - 1]);
    } else {
        const int u = cutoff_user - 1;  // 0-based bonus user in partial regime
        rates[u] = std::log2(1.0 + slack / (1.0 - slack + composites[u]));
    }
    return rates;
}

bool allocate_feasible(const std::vector<double>& composites, double qos_norm,
                       PowerAllocation& out) {
    require_sorted_positive(composites);
    if (qos_norm < 0.0) throw std::domain_error("QoS must be >= 0");
    const int k = static_cast<int>(composites.size());
    const double c = std::exp2(qos_norm) - 1.0;
    std::vector<double> hat(k, 0.0);
    double tail = 0.0;
    for (int l = k - 1; l >= 0; --l) {
        hat[l] = c * (tail + composites[l]);
        tail += hat[l];
    }
    // The minimum total power for full QoS is exactly the recursion sum
    // (equivalently (2^Q - 1) * sum_i (2^Q)^(i-1) A_i).
    if (tail > 1.0) return false;
    out.regime = Regime::kFeasibleAllQos;
    out.cutoff_user = 0;
    out.qos_norm = qos_norm;
    out.slack = 1.0 - tail;
    out.qos_fractions = hat;
    out.fractions = hat;
    out.fractions[k - 1] += out.slack;
    out.cell_rate_norm = k * qos_norm + std::log2(1.0 + out.slack / composites[k - 1]);
    out.qos_met.assign(k, true);
    return true;
}

PowerAllocation allocate_partial(const std::vector<double>& composites, double qos_norm) {
    require_sorted_positive(composites);
    const int k = static_cast<int>(composites.size());
    const double c = std::exp2(qos_norm) - 1.0;
    // Tail sums S_l of the minimum-power recursion; the cutoff is the unique
    // u with S_{u+1} <= 1 < S_u (S decreases in l, S_{K+1} = 0).
    double s_next = 0.0;  // S_{l+1}
    int u = 0;            // 1-based cutoff user
    double delta = 0.0;
    for (int l = k; l >= 1; --l) {
        const double s_l = (1.0 + c) * s_next + c * composites[l - 1];
        if (s_l > 1.0) {
            u = l;
            delta = 1.0 - s_next;
            break;
        }
        s_next = s_l;
    }
    if (u == 0)
        throw std::logic_error("allocate_partial called on a feasible instance");
    assert(delta >= 0.0 && delta <= 1.0);

    PowerAllocation out;
    out.regime = Regime::kPartialQos;
    out.cutoff_user = u;  // ordered users with index >= u (0-based) keep QoS
    out.qos_norm = qos_norm;
    out.slack = delta;
    out.qos_fractions.assign(k, 0.0);
    double tail = 0.0;
    for (int l = k - 1; l >= u; --l) {
        out.qos_fractions[l] = c * (tail + composites[l]);
        tail += out.qos_fractions[l];
    }
    out.fractions = out.qos_fractions;
    out.fractions[u - 1] = delta;
    out.cell_rate_norm = (k - u) * qos_norm +
                         std::log2(1.0 + delta / (1.0 - delta + composites[u - 1]));
    out.qos_met.assign(k, false);
    for (int l = u; l < k; ++l) out.qos_met[l] = true;
    return out;
}

PowerAllocation allocate(const std::vector<double>& composites, double qos_norm, int cell) {
    PowerAllocation out;
    if (!allocate_feasible(composites, qos_norm, out)) {
        out = allocate_partial(composites, qos_norm);
    }
    out.cell = cell;
    return out;
}

RateReport evaluate_network(const std::vector<std::vector<channel::UserLink>>& links,
                            const std::vector<PowerAllocation>& allocations,
                            double bandwidth_hz) {
    if (links.size() != allocations.size())
        throw std::domain_error("one allocation per cell required");
    RateReport report;
    report.cell_rate_bps.resize(links.size(), 0.0);
    for (std::size_t m = 0; m < links.size(); ++m) {
        const auto& cell_links = links[m];
        const auto& alloc = allocations[m];
        if (cell_links.size() != alloc.fractions.size())
            throw std::domain_error("allocation does not match cell population");
        std::vector<double> composites(cell_links.size());
        for (std::size_t l = 0; l < cell_links.size(); ++l)
            composites[l] = cell_links[l].composite;
        const auto guarantees = alloc.guarantee_rates_norm(composites);
        for (std::size_t l = 0; l < cell_links.size(); ++l) {
            RateReport::UserRate ur;
            ur.cell = static_cast<int>(m);
            ur.ordered_index = static_cast<int>(l);
            ur.user = cell_links[l].user;
            ur.literal_rate_bps =
                rate(sinr(alloc.fractions, composites, static_cast<int>(l)), bandwidth_hz);
            ur.guarantee_rate_bps = guarantees[l] * bandwidth_hz;
            ur.qos_met = alloc.qos_met[l];
            report.cell_rate_bps[m] += ur.literal_rate_bps;
            report.users.push_back(std::move(ur));
        }
        report.network_rate_bps += report.cell_rate_bps[m];
    }
    return report;
}

}  // namespace haps::noma
