#include "vfcsim/channel/link.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vfc {

std::vector<std::vector<int>> assign_rbs(const std::vector<double>& shares, int rb_count) {
    const int n = static_cast<int>(shares.size());
    std::vector<std::vector<int>> out(n);
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
        if (shares[i] > 0.0) active.push_back(i);
    }
    if (active.empty()) return out;

    if (static_cast<int>(active.size()) > rb_count) {
        // more transmitters than RBs: wrap round-robin, RBs get shared
        for (size_t pos = 0; pos < active.size(); ++pos) {
            out[active[pos]].push_back(static_cast<int>(pos) % rb_count);
        }
        return out;
    }

    // largest-remainder apportionment of rb_count blocks, at least one each
    const double total = std::accumulate(active.begin(), active.end(), 0.0,
                                         [&](double acc, int i) { return acc + shares[i]; });
    const double scale = total > 1.0 ? 1.0 / total : 1.0;
    std::vector<int> counts(active.size());
    std::vector<std::pair<double, size_t>> remainders;
    int used = 0;
    for (size_t pos = 0; pos < active.size(); ++pos) {
        const double exact = shares[active[pos]] * scale * rb_count;
        counts[pos] = static_cast<int>(std::floor(exact + 1e-12));
        used += counts[pos];
        remainders.push_back({exact - counts[pos], pos});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    int leftover = rb_count - used;
    for (size_t i = 0; leftover > 0 && i < remainders.size(); ++i, --leftover) {
        ++counts[remainders[i].second];
    }
    // guarantee one RB per active link, taking from the largest holder
    for (size_t pos = 0; pos < active.size(); ++pos) {
        if (counts[pos] == 0) {
            auto largest = std::max_element(counts.begin(), counts.end());
            if (*largest > 1) --(*largest);
            counts[pos] = 1;
        }
    }
    int next_rb = 0;
    for (size_t pos = 0; pos < active.size(); ++pos) {
        for (int c = 0; c < counts[pos] && next_rb < rb_count; ++c) {
            out[active[pos]].push_back(next_rb++);
        }
    }
    return out;
}

void compute_sinr_capacity(std::vector<LinkState>& links, const RbPlan& plan, double noise_dbm) {
    const double noise_w = dbm_to_watts(noise_dbm);
    const double rb_bw = plan.rb_bandwidth_hz();

    // received power per RB for every active link (power split across its RBs)
    std::vector<double> rx_power_per_rb(links.size(), 0.0);
    std::vector<std::vector<int>> occupants(plan.rb_count);
    for (size_t i = 0; i < links.size(); ++i) {
        if (links[i].rb_set.empty()) {
            links[i].sinr_linear = 0.0;
            links[i].capacity_bps = 0.0;
            continue;
        }
        const double p_w = dbm_to_watts(links[i].tx_power_dbm);
        rx_power_per_rb[i] = p_w / links[i].rb_set.size() * links[i].gain_linear;
        for (int rb : links[i].rb_set) occupants[rb].push_back(static_cast<int>(i));
    }

    for (size_t i = 0; i < links.size(); ++i) {
        if (links[i].rb_set.empty()) continue;
        double sinr_sum = 0.0;
        double capacity = 0.0;
        for (int rb : links[i].rb_set) {
            double interference = 0.0;
            for (int other : occupants[rb]) {
                if (other != static_cast<int>(i)) interference += rx_power_per_rb[other];
            }
            const double gamma = rx_power_per_rb[i] / (noise_w + interference);
            sinr_sum += gamma;
            capacity += rb_bw * std::log2(1.0 + gamma);
        }
        links[i].sinr_linear = sinr_sum / links[i].rb_set.size();
        links[i].capacity_bps = capacity;
    }
}

}  // namespace vfc
