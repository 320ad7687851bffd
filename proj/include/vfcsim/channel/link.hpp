#pragma once

#include <vector>

#include "vfcsim/core/node.hpp"
#include "vfcsim/channel/propagation.hpp"

namespace vfc {

/// Per-TTI state of one wireless link.
struct LinkState {
    int tx_id = 0;
    int rx_id = 0;
    LinkMode mode = LinkMode::V2V;
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    double shadow_db = 0.0;
    double fading_h = 1.0;
    double tx_power_dbm = 23.0;
    std::vector<int> rb_set;       // assigned resource-block indices
    double gain_linear = 0.0;      // S/PL * h
    double sinr_linear = 0.0;      // mean over assigned RBs
    double capacity_bps = 0.0;     // sum over assigned RBs

    bool active() const { return !rb_set.empty(); }
};

/// Spectrum slicing into equal resource blocks.
struct RbPlan {
    double total_bandwidth_hz = 20e6;
    int rb_count = 20;

    double rb_bandwidth_hz() const { return total_bandwidth_hz / rb_count; }
};

/// Splits the band between links according to fractional shares.
/// With at most rb_count transmitters every link gets a disjoint block count
/// by largest remainder (at least one RB each); with more transmitters than
/// RBs the links are wrapped round-robin and co-channel interference appears.
std::vector<std::vector<int>> assign_rbs(const std::vector<double>& shares, int rb_count);

/// Computes per-RB SINR and capacity for every link with a nonempty rb_set.
/// Transmit power is split evenly over a link's RBs; interference on an RB is
/// the sum of the co-occupants' per-RB received powers (their own p*g, per the
/// link-gain bookkeeping of the SINR model). A link whose rb_set is empty gets
/// sinr 0 and capacity 0. With sole occupancy the SINR equals the SNR exactly.
void compute_sinr_capacity(std::vector<LinkState>& links, const RbPlan& plan, double noise_dbm);

}  // namespace vfc
