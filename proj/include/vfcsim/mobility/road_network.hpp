#pragma once

#include <vector>

#include "vfcsim/core/vec3.hpp"

namespace vfc {

struct Lane {
    int from = 0;
    int to = 0;
    double length = 0.0;       // meters
    double speed_limit = 13.9; // m/s
};

/// Directed lane graph over a set of intersections. The built-in generator
/// produces a uniform grid with bidirectional lanes, which is strongly
/// connected by construction.
class RoadNetwork {
public:
    RoadNetwork() = default;
    RoadNetwork(std::vector<Vec2> intersections, std::vector<Lane> lanes, Vec2 bounds);

    /// nx-by-ny grid spanning [0, bounds.x] x [0, bounds.y].
    static RoadNetwork grid(int nx, int ny, Vec2 bounds, double speed_limit = 13.9);

    const std::vector<Vec2>& intersections() const { return intersections_; }
    const std::vector<Lane>& lanes() const { return lanes_; }
    const Vec2& bounds() const { return bounds_; }
    const std::vector<int>& out_lanes(int intersection) const { return out_lanes_[intersection]; }

    bool strongly_connected() const;

    /// Shortest lane sequence from one intersection to another (Dijkstra on
    /// lane lengths, deterministic tie-breaking by lane index).
    std::vector<int> shortest_path(int from, int to) const;

    Vec3 position_on_lane(int lane_id, double offset) const;

private:
    std::vector<Vec2> intersections_;
    std::vector<Lane> lanes_;
    std::vector<std::vector<int>> out_lanes_;
    Vec2 bounds_{2000.0, 2000.0};
};

}  // namespace vfc
