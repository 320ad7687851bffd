#pragma once

#include <map>
#include <optional>
#include <string>

#include "vfcsim/core/vec3.hpp"

namespace vfc {

enum class NodeKind { TaskVehicle, ServingVehicle, Uav, Rsu, CloudServer };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

enum class LinkMode { V2V, V2I, V2U, U2V, U2U, U2I, WiredI2I };

const char* to_string(LinkMode mode);

/// Wireless mode for a transmitter/receiver kind pair. Wired only between
/// infrastructure (RSU <-> cloud).
LinkMode link_mode_for(NodeKind tx, NodeKind rx);

/// Any fog entity: task vehicle, serving vehicle, UAV, RSU or cloud server.
struct Node {
    int id = 0;
    NodeKind kind = NodeKind::TaskVehicle;
    Vec3 position;
    double cpu_freq = 0.0;             // cycles/s
    std::map<LinkMode, double> tx_power_dbm;
    double coverage_radius = 0.0;      // meters
    double stake = 0.0;                // tokens
    std::optional<double> battery_j;   // UAV only
    double task_lambda = 0.0;          // tasks/s, task vehicles only

    bool is_vehicle() const {
        return kind == NodeKind::TaskVehicle || kind == NodeKind::ServingVehicle;
    }
    bool is_fog_node() const {
        return kind == NodeKind::ServingVehicle || kind == NodeKind::Uav ||
               kind == NodeKind::Rsu || kind == NodeKind::CloudServer;
    }
    bool is_zone_manager() const {
        return kind == NodeKind::Uav || kind == NodeKind::Rsu;
    }

    double tx_power_for(LinkMode mode) const {
        auto it = tx_power_dbm.find(mode);
        return it == tx_power_dbm.end() ? 23.0 : it->second;
    }
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace vfc
