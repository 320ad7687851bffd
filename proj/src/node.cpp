#include "vfcsim/core/node.hpp"

#include <stdexcept>

namespace vfc {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::TaskVehicle: return "task_vehicle";
        case NodeKind::ServingVehicle: return "serving_vehicle";
        case NodeKind::Uav: return "uav";
        case NodeKind::Rsu: return "rsu";
        case NodeKind::CloudServer: return "cloud";
    }
    return "unknown";
}

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "task_vehicle") return NodeKind::TaskVehicle;
    if (s == "serving_vehicle") return NodeKind::ServingVehicle;
    if (s == "uav") return NodeKind::Uav;
    if (s == "rsu") return NodeKind::Rsu;
    if (s == "cloud") return NodeKind::CloudServer;
    throw std::invalid_argument("unknown node kind: " + s);
}

const char* to_string(LinkMode mode) {
    switch (mode) {
        case LinkMode::V2V: return "V2V";
        case LinkMode::V2I: return "V2I";
        case LinkMode::V2U: return "V2U";
        case LinkMode::U2V: return "U2V";
        case LinkMode::U2U: return "U2U";
        case LinkMode::U2I: return "U2I";
        case LinkMode::WiredI2I: return "I2I-wired";
    }
    return "unknown";
}

LinkMode link_mode_for(NodeKind tx, NodeKind rx) {
    const bool tx_veh = tx == NodeKind::TaskVehicle || tx == NodeKind::ServingVehicle;
    const bool rx_veh = rx == NodeKind::TaskVehicle || rx == NodeKind::ServingVehicle;
    const bool tx_infra = tx == NodeKind::Rsu || tx == NodeKind::CloudServer;
    const bool rx_infra = rx == NodeKind::Rsu || rx == NodeKind::CloudServer;

    if (tx_veh && rx_veh) return LinkMode::V2V;
    if (tx_veh && rx == NodeKind::Uav) return LinkMode::V2U;
    if (tx_veh && rx_infra) return LinkMode::V2I;
    if (tx == NodeKind::Uav && rx_veh) return LinkMode::U2V;
    if (tx == NodeKind::Uav && rx == NodeKind::Uav) return LinkMode::U2U;
    if (tx == NodeKind::Uav && rx_infra) return LinkMode::U2I;
    if (tx_infra && rx_veh) return LinkMode::V2I;
    if (tx_infra && rx == NodeKind::Uav) return LinkMode::U2I;
    return LinkMode::WiredI2I;
}

}  // namespace vfc
