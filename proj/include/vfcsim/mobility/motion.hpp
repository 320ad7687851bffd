#pragma once

#include <stdexcept>
#include <vector>

#include "vfcsim/core/rng.hpp"
#include "vfcsim/core/vec3.hpp"
#include "vfcsim/mobility/road_network.hpp"

namespace vfc {

/// Route-following vehicle state. Vehicles move at min(speed, lane limit) and
/// either despawn or redraw a random route when the route completes.
struct VehicleMotion {
    int node_id = 0;
    std::vector<int> route;   // lane ids, in travel order
    size_t route_pos = 0;
    double lane_offset = 0.0; // meters along the current lane
    double speed = 10.0;      // desired speed, m/s

    int current_lane() const { return route[route_pos]; }
    bool route_finished() const { return route_pos >= route.size(); }
};

struct VehicleStepResult {
    std::vector<int> completed_routes;  // node ids that reached their destination
};

/// Advances every vehicle by speed*dt along its route, carrying leftover
/// distance across lane transitions. Vehicles that finish their route are
/// reported; the caller decides between despawn and redraw.
VehicleStepResult step_vehicles(const RoadNetwork& network, std::vector<VehicleMotion>& motions,
                                double dt);

Vec3 vehicle_position(const RoadNetwork& network, const VehicleMotion& motion);

/// Draws a route between two distinct random intersections.
VehicleMotion spawn_vehicle(const RoadNetwork& network, int node_id, RngStream& rng,
                            double speed_lo = 8.0, double speed_hi = 14.0);

/// Replaces a finished route with a fresh random destination, keeping speed.
void redraw_route(const RoadNetwork& network, VehicleMotion& motion, RngStream& rng);

/// Straight-line UAV flight toward a 2-D target at a capped speed.
struct UavMotion {
    int node_id = 0;
    Vec3 position;            // z fixed at cruise altitude
    Vec2 target{0.0, 0.0};
    double v_max = 25.0;      // m/s
};

/// Moves toward the target by min(v_max*dt, remaining distance); altitude is
/// never modified.
void move_uav_toward(UavMotion& motion, double dt);

}  // namespace vfc
