#pragma once

#include <cmath>
#include <stdexcept>

namespace vfc {

/// Two-timescale clock: fine-grained TTIs for communication/computation and a
/// coarser mobility step. The mobility step must be an exact integer multiple
/// of the TTI duration.
struct SimClock {
    long tti_index = 0;
    double tti_duration = 0.05;   // seconds
    double mobility_step = 0.5;   // seconds
    double horizon = 60.0;        // seconds

    void validate() const {
        if (tti_duration <= 0.0) throw std::invalid_argument("tti_duration must be > 0");
        if (mobility_step <= 0.0) throw std::invalid_argument("mobility_step must be > 0");
        if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
        const double ratio = mobility_step / tti_duration;
        if (std::abs(ratio - std::round(ratio)) > 1e-9) {
            throw std::invalid_argument("mobility_step must be an integer multiple of tti_duration");
        }
    }

    long mobility_ratio() const {
        return static_cast<long>(std::round(mobility_step / tti_duration));
    }

    /// Simulated time at the start of the current TTI.
    double now() const { return static_cast<double>(tti_index) * tti_duration; }

    /// Mobility fires on TTIs 0, r, 2r, ... where r = mobility_ratio().
    bool on_mobility_boundary() const { return tti_index % mobility_ratio() == 0; }

    bool past_horizon() const { return now() + tti_duration > horizon + 1e-9; }

    long total_ttis() const {
        return static_cast<long>(std::floor(horizon / tti_duration + 1e-9));
    }
};

}  // namespace vfc
