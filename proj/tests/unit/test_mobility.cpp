#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "vfcsim/mobility/kmeans.hpp"
#include "vfcsim/mobility/motion.hpp"
#include "vfcsim/mobility/road_network.hpp"
#include "vfcsim/mobility/trace.hpp"

using namespace vfc;

TEST_CASE("grid network is strongly connected and in bounds") {
    const auto net = RoadNetwork::grid(5, 5, {2000.0, 2000.0});
    CHECK(net.intersections().size() == 25);
    CHECK(net.strongly_connected());
    for (const auto& p : net.intersections()) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 2000.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 2000.0);
    }
    // random routes always exist
    for (int a = 0; a < 25; ++a) {
        for (int b = 0; b < 25; ++b) {
            if (a != b) CHECK_FALSE(net.shortest_path(a, b).empty());
        }
    }
}

TEST_CASE("vehicle stepping: speed zero and exact arithmetic") {
    const auto net = RoadNetwork::grid(2, 2, {100.0, 100.0}, 50.0);
    VehicleMotion m;
    m.node_id = 1;
    m.route = net.shortest_path(0, 1);  // single 100 m lane
    m.speed = 0.0;
    std::vector<VehicleMotion> ms = {m};
    step_vehicles(net, ms, 0.5);
    CHECK(ms[0].lane_offset == 0.0);

    ms[0].speed = 10.0;
    step_vehicles(net, ms, 0.5);
    CHECK(ms[0].lane_offset == doctest::Approx(5.0));
}

TEST_CASE("vehicle stepping carries leftover distance across lanes") {
    const auto net = RoadNetwork::grid(3, 2, {200.0, 100.0}, 50.0);
    // route 0 -> 1 -> 2 along the bottom row, two 100 m lanes
    VehicleMotion m;
    m.node_id = 1;
    m.route = net.shortest_path(0, 2);
    REQUIRE(m.route.size() == 2);
    m.speed = 10.0;
    m.lane_offset = 98.0;
    std::vector<VehicleMotion> ms = {m};
    step_vehicles(net, ms, 0.5);
    CHECK(ms[0].route_pos == 1);
    CHECK(ms[0].lane_offset == doctest::Approx(3.0));
}

TEST_CASE("vehicle speed is capped by the lane limit") {
    const auto net = RoadNetwork::grid(2, 2, {100.0, 100.0}, 13.9);
    VehicleMotion m;
    m.node_id = 1;
    m.route = net.shortest_path(0, 1);
    m.speed = 14.0;  // above the limit
    std::vector<VehicleMotion> ms = {m};
    step_vehicles(net, ms, 0.5);
    CHECK(ms[0].lane_offset == doctest::Approx(13.9 * 0.5));
}

TEST_CASE("vehicle on foreign lane is a configuration error") {
    const auto net = RoadNetwork::grid(2, 2, {100.0, 100.0});
    VehicleMotion m;
    m.node_id = 1;
    m.route = {9999};
    std::vector<VehicleMotion> ms = {m};
    CHECK_THROWS_AS(step_vehicles(net, ms, 0.5), std::invalid_argument);
}

TEST_CASE("spawned vehicles stay inside bounds over a long run") {
    const auto net = RoadNetwork::grid(5, 5, {2000.0, 2000.0});
    RngStream rng(5, "mobility");
    std::vector<VehicleMotion> ms;
    for (int i = 0; i < 20; ++i) ms.push_back(spawn_vehicle(net, i, rng));
    for (int step = 0; step < 400; ++step) {
        const auto res = step_vehicles(net, ms, 0.5);
        for (int id : res.completed_routes) {
            for (auto& m : ms) {
                if (m.node_id == id) redraw_route(net, m, rng);
            }
        }
        for (const auto& m : ms) {
            const Vec3 p = vehicle_position(net, m);
            CHECK(p.x >= -1e-9);
            CHECK(p.x <= 2000.0 + 1e-9);
            CHECK(p.y >= -1e-9);
            CHECK(p.y <= 2000.0 + 1e-9);
            CHECK(p.z == 0.0);
        }
    }
}

TEST_CASE("kmeans trivial cases") {
    RngStream rng(7, "mobility");
    // all vehicles at the same point
    std::vector<Vec2> same(5, {100.0, 100.0});
    auto r = plan_kmeans(same, 1, rng);
    REQUIRE(r.centers.size() == 1);
    CHECK(r.centers[0].x == doctest::Approx(100.0));
    CHECK(r.centers[0].y == doctest::Approx(100.0));

    // k=1 returns the centroid
    std::vector<Vec2> pts = {{0, 0}, {10, 0}, {0, 10}, {30, 2}};
    r = plan_kmeans(pts, 1, rng);
    REQUIRE(r.centers.size() == 1);
    CHECK(r.centers[0].x == doctest::Approx(10.0));
    CHECK(r.centers[0].y == doctest::Approx(3.0));
}

TEST_CASE("kmeans recovers the two obvious clusters") {
    RngStream rng(11, "mobility");
    std::vector<Vec2> pts = {{0, 0}, {0, 1}, {10, 0}, {10, 1}};
    const auto r = plan_kmeans(pts, 2, rng);
    REQUIRE(r.centers.size() == 2);
    CHECK(r.centers[0].x == doctest::Approx(0.0));
    CHECK(r.centers[0].y == doctest::Approx(0.5));
    CHECK(r.centers[1].x == doctest::Approx(10.0));
    CHECK(r.centers[1].y == doctest::Approx(0.5));
}

namespace {

// brute force: best 2-partition objective for k=2
double brute_force_k2(const std::vector<Vec2>& pts) {
    const size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double sx[2] = {0, 0}, sy[2] = {0, 0};
        int cnt[2] = {0, 0};
        for (size_t i = 0; i < n; ++i) {
            const int g = (mask >> i) & 1;
            sx[g] += pts[i].x;
            sy[g] += pts[i].y;
            ++cnt[g];
        }
        std::vector<Vec2> centers;
        for (int g = 0; g < 2; ++g) {
            if (cnt[g] > 0) centers.push_back({sx[g] / cnt[g], sy[g] / cnt[g]});
        }
        best = std::min(best, kmeans_objective(pts, centers));
    }
    return best;
}

}  // namespace

TEST_CASE("kmeans k=2 matches brute force or is flagged as a local optimum") {
    RngStream rng(13, "mobility");
    RngStream gen(17, "gen");
    int local_optima = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 3 + static_cast<int>(gen.uniform_index(6));  // 3..8 points
        std::vector<Vec2> pts;
        for (int i = 0; i < n; ++i) pts.push_back({gen.uniform(0, 2000), gen.uniform(0, 2000)});
        const auto r = plan_kmeans(pts, 2, rng, 50, 1e-6);
        const double best = brute_force_k2(pts);
        REQUIRE(r.objective >= best - 1e-6);
        if (r.objective > best + 1e-6 * (1.0 + best)) ++local_optima;
    }
    // both outcomes are legitimate; the flag frequency is what gets reported
    MESSAGE("k=2 local optima: ", local_optima, "/", trials);
    CHECK(local_optima < trials / 2);
}

TEST_CASE("kmeans objective is non-increasing across lloyd iterations") {
    RngStream gen(19, "gen");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 12; ++i) pts.push_back({gen.uniform(0, 100), gen.uniform(0, 100)});
        // run with increasing iteration caps; the objective must not rise
        double prev = std::numeric_limits<double>::infinity();
        for (int iters = 1; iters <= 8; ++iters) {
            RngStream rng(100 + trial, "mobility");  // same seeding per cap
            const auto r = plan_kmeans(pts, 3, rng, iters, 0.0);
            CHECK(r.objective <= prev + 1e-9);
            prev = r.objective;
        }
    }
}

TEST_CASE("kmeans flags duplicate centers when k exceeds distinct points") {
    RngStream rng(23, "mobility");
    std::vector<Vec2> pts = {{5, 5}, {5, 5}, {5, 5}};
    const auto r = plan_kmeans(pts, 2, rng);
    CHECK(r.duplicate_centers);
    REQUIRE(r.centers.size() == 2);
}

TEST_CASE("uav moves straight toward target with capped displacement") {
    UavMotion u;
    u.position = {0, 0, 100};
    u.target = {100, 0};
    u.v_max = 25.0;

    // already at target
    UavMotion at = u;
    at.position = {100, 0, 100};
    move_uav_toward(at, 0.5);
    CHECK(at.position.x == doctest::Approx(100.0));

    // 100 m away, cap 12.5 m
    move_uav_toward(u, 0.5);
    CHECK(u.position.x == doctest::Approx(12.5));
    CHECK(u.position.z == doctest::Approx(100.0));

    // 5 m away: lands exactly on target, no overshoot
    UavMotion close;
    close.position = {95, 0, 100};
    close.target = {100, 0};
    move_uav_toward(close, 0.5);
    CHECK(close.position.x == doctest::Approx(100.0));

    // per-step displacement never exceeds v_max*dt
    RngStream rng(29, "mobility");
    for (int i = 0; i < 200; ++i) {
        UavMotion m;
        m.position = {rng.uniform(0, 2000), rng.uniform(0, 2000), 100.0};
        m.target = {rng.uniform(0, 2000), rng.uniform(0, 2000)};
        const Vec3 before = m.position;
        move_uav_toward(m, 0.5);
        CHECK(distance_3d(before, m.position) <= 25.0 * 0.5 + 1e-9);
        CHECK(m.position.z == 100.0);
    }
}

TEST_CASE("trace parsing") {
    {
        std::istringstream empty("");
        const auto t = load_trace(empty, 0.5);
        CHECK(t.empty());
    }
    {
        std::istringstream one("0.0 veh1 100 200\n");
        const auto t = load_trace(one, 0.5);
        REQUIRE(t.steps.count(0) == 1);
        REQUIRE(t.steps.at(0).count("veh1") == 1);
        CHECK(t.steps.at(0).at("veh1").x == doctest::Approx(100.0));
        CHECK(t.steps.at(0).at("veh1").y == doctest::Approx(200.0));
    }
    {
        std::istringstream bad("0.0 veh1 100\n");
        CHECK_THROWS_AS(load_trace(bad, 0.5), TraceParseError);
    }
    {
        std::istringstream unordered("1.0 veh1 1 1\n0.5 veh1 2 2\n");
        CHECK_THROWS_AS(load_trace(unordered, 0.5), TraceParseError);
    }
    {
        std::istringstream misaligned("0.3 veh1 1 1\n");
        CHECK_THROWS_AS(load_trace(misaligned, 0.5), TraceParseError);
    }
}
