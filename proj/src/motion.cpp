#include "vfcsim/mobility/motion.hpp"

#include <algorithm>
#include <cmath>

namespace vfc {

VehicleStepResult step_vehicles(const RoadNetwork& network, std::vector<VehicleMotion>& motions,
                                double dt) {
    VehicleStepResult result;
    for (VehicleMotion& m : motions) {
        if (m.route_finished()) continue;
        if (m.current_lane() < 0 || m.current_lane() >= static_cast<int>(network.lanes().size())) {
            throw std::invalid_argument("vehicle is on a lane absent from the network");
        }
        double budget = 0.0;
        while (!m.route_finished()) {
            const Lane& lane = network.lanes()[m.current_lane()];
            if (budget == 0.0) budget = std::min(m.speed, lane.speed_limit) * dt;
            const double room = lane.length - m.lane_offset;
            if (budget < room - 1e-12) {
                m.lane_offset += budget;
                budget = 0.0;
                break;
            }
            budget -= room;
            ++m.route_pos;
            m.lane_offset = 0.0;
            if (m.route_finished()) {
                // park at the destination intersection (end of the last lane)
                --m.route_pos;
                m.lane_offset = lane.length;
                ++m.route_pos;
                result.completed_routes.push_back(m.node_id);
                break;
            }
        }
    }
    return result;
}

Vec3 vehicle_position(const RoadNetwork& network, const VehicleMotion& motion) {
    if (motion.route.empty()) return {0.0, 0.0, 0.0};
    if (motion.route_finished()) {
        const Lane& last = network.lanes()[motion.route.back()];
        const Vec2& p = network.intersections()[last.to];
        return {p.x, p.y, 0.0};
    }
    return network.position_on_lane(motion.current_lane(), motion.lane_offset);
}

VehicleMotion spawn_vehicle(const RoadNetwork& network, int node_id, RngStream& rng,
                            double speed_lo, double speed_hi) {
    VehicleMotion m;
    m.node_id = node_id;
    m.speed = rng.uniform(speed_lo, speed_hi);
    const int n = static_cast<int>(network.intersections().size());
    const int from = static_cast<int>(rng.uniform_index(n));
    int to = static_cast<int>(rng.uniform_index(n - 1));
    if (to >= from) ++to;
    m.route = network.shortest_path(from, to);
    m.route_pos = 0;
    m.lane_offset = 0.0;
    return m;
}

void redraw_route(const RoadNetwork& network, VehicleMotion& motion, RngStream& rng) {
    const Lane& last = network.lanes()[motion.route.back()];
    const int from = last.to;
    const int n = static_cast<int>(network.intersections().size());
    int to = static_cast<int>(rng.uniform_index(n - 1));
    if (to >= from) ++to;
    motion.route = network.shortest_path(from, to);
    motion.route_pos = 0;
    motion.lane_offset = 0.0;
}

void move_uav_toward(UavMotion& motion, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    const double dx = motion.target.x - motion.position.x;
    const double dy = motion.target.y - motion.position.y;
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist == 0.0) return;
    const double step = std::min(motion.v_max * dt, dist);
    motion.position.x += dx / dist * step;
    motion.position.y += dy / dist * step;
}

}  // namespace vfc
