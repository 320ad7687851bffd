#include "vfcsim/mobility/road_network.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace vfc {

RoadNetwork::RoadNetwork(std::vector<Vec2> intersections, std::vector<Lane> lanes, Vec2 bounds)
    : intersections_(std::move(intersections)), lanes_(std::move(lanes)), bounds_(bounds) {
    out_lanes_.assign(intersections_.size(), {});
    for (size_t i = 0; i < lanes_.size(); ++i) {
        const Lane& lane = lanes_[i];
        if (lane.from == lane.to) throw std::invalid_argument("lane connects an intersection to itself");
        if (lane.from < 0 || lane.from >= static_cast<int>(intersections_.size()) ||
            lane.to < 0 || lane.to >= static_cast<int>(intersections_.size())) {
            throw std::invalid_argument("lane endpoint outside the network");
        }
        out_lanes_[lane.from].push_back(static_cast<int>(i));
    }
}

RoadNetwork RoadNetwork::grid(int nx, int ny, Vec2 bounds, double speed_limit) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2x2 intersections");
    std::vector<Vec2> points;
    points.reserve(static_cast<size_t>(nx) * ny);
    const double sx = bounds.x / (nx - 1);
    const double sy = bounds.y / (ny - 1);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            points.push_back({ix * sx, iy * sy});
        }
    }
    auto id = [nx](int ix, int iy) { return iy * nx + ix; };
    std::vector<Lane> lanes;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (ix + 1 < nx) {
                lanes.push_back({id(ix, iy), id(ix + 1, iy), sx, speed_limit});
                lanes.push_back({id(ix + 1, iy), id(ix, iy), sx, speed_limit});
            }
            if (iy + 1 < ny) {
                lanes.push_back({id(ix, iy), id(ix, iy + 1), sy, speed_limit});
                lanes.push_back({id(ix, iy + 1), id(ix, iy), sy, speed_limit});
            }
        }
    }
    return RoadNetwork(std::move(points), std::move(lanes), bounds);
}

bool RoadNetwork::strongly_connected() const {
    if (intersections_.empty()) return false;
    auto reachable = [this](bool reversed) {
        std::vector<bool> seen(intersections_.size(), false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        size_t count = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const Lane& lane : lanes_) {
                const int a = reversed ? lane.to : lane.from;
                const int b = reversed ? lane.from : lane.to;
                if (a == u && !seen[b]) {
                    seen[b] = true;
                    ++count;
                    q.push(b);
                }
            }
        }
        return count == intersections_.size();
    };
    return reachable(false) && reachable(true);
}

std::vector<int> RoadNetwork::shortest_path(int from, int to) const {
    const size_t n = intersections_.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> via_lane(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[from] = 0.0;
    heap.push({0.0, from});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u] + 1e-12) continue;
        if (u == to) break;
        for (int lane_id : out_lanes_[u]) {
            const Lane& lane = lanes_[lane_id];
            const double nd = d + lane.length;
            if (nd + 1e-12 < dist[lane.to]) {
                dist[lane.to] = nd;
                via_lane[lane.to] = lane_id;
                heap.push({nd, lane.to});
            }
        }
    }
    if (via_lane[to] == -1 && from != to) return {};
    std::vector<int> path;
    for (int v = to; v != from;) {
        const int lane_id = via_lane[v];
        path.push_back(lane_id);
        v = lanes_[lane_id].from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Vec3 RoadNetwork::position_on_lane(int lane_id, double offset) const {
    const Lane& lane = lanes_[lane_id];
    const Vec2& a = intersections_[lane.from];
    const Vec2& b = intersections_[lane.to];
    const double f = lane.length > 0.0 ? offset / lane.length : 0.0;
    return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f, 0.0};
}

}  // namespace vfc
