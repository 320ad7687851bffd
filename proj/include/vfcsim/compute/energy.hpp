#pragma once

#include <map>

namespace vfc {

/// Per-node cumulative energy counters (joules). All counters are monotone
/// non-decreasing.
struct EnergyMeter {
    double tx_joules = 0.0;
    double comp_joules = 0.0;
    double fly_joules = 0.0;

    void add_tx(double power_watts, double active_s) { tx_joules += power_watts * active_s; }

    /// kappa * F^2 * cycles, the usual effective-switched-capacitance form.
    void add_compute(double kappa, double cpu_freq, double cycles) {
        comp_joules += kappa * cpu_freq * cpu_freq * cycles;
    }

    void add_hover(double hover_watts, double dt) { fly_joules += hover_watts * dt; }

    double total() const { return tx_joules + comp_joules + fly_joules; }
};

using EnergyLedger = std::map<int, EnergyMeter>;  // node id -> meter

}  // namespace vfc
