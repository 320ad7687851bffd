#pragma once

#include <stdexcept>

#include "vfcsim/core/rng.hpp"

namespace vfc {

/// Unstable M/M/1 queue (arrival rate >= service rate).
struct UnstableQueueError : std::runtime_error {
    UnstableQueueError() : std::runtime_error("M/M/1 queue unstable: arrival rate >= service rate") {}
};

/// Expected M/M/1 sojourn time (waiting + service): 1 / (mu - lambda).
inline double wired_expected_sojourn_s(double arrival_rate, double service_rate) {
    if (arrival_rate < 0.0 || service_rate <= 0.0) {
        throw std::invalid_argument("rates must satisfy service_rate > 0, arrival_rate >= 0");
    }
    if (arrival_rate >= service_rate) throw UnstableQueueError{};
    return 1.0 / (service_rate - arrival_rate);
}

/// Per-message sojourn sample; the M/M/1 sojourn is exponential with rate
/// (mu - lambda).
inline double wired_sample_sojourn_s(double arrival_rate, double service_rate, RngStream& rng) {
    const double mean = wired_expected_sojourn_s(arrival_rate, service_rate);
    return rng.exponential(mean);
}

}  // namespace vfc
