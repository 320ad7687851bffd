#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "vfcsim/core/vec3.hpp"

namespace vfc {

/// Imported floating-car positions, one record per (step, vehicle).
/// Format: `time vehicle_id x y`, single spaces, time in seconds with one
/// decimal, coordinates in meters. Timestamps must be non-decreasing and
/// multiples of the mobility step.
struct MobilityTrace {
    // step index -> (vehicle id -> position)
    std::map<long, std::map<std::string, Vec2>> steps;
    double mobility_step = 0.5;

    bool empty() const { return steps.empty(); }
    long last_step() const { return steps.empty() ? -1 : steps.rbegin()->first; }
};

struct TraceParseError : std::runtime_error {
    explicit TraceParseError(const std::string& msg) : std::runtime_error(msg) {}
};

MobilityTrace load_trace(std::istream& in, double mobility_step);
MobilityTrace load_trace_file(const std::string& path, double mobility_step);

}  // namespace vfc
