#pragma once

#include <stdexcept>

#include "vfcsim/offload/instance.hpp"

namespace vfc {

struct OracleSizeError : std::invalid_argument {
    OracleSizeError() : std::invalid_argument(
        "exact oracle accepts at most 3 tasks, 3 nodes and 20 slots") {}
};

struct OracleResult {
    Schedule schedule;
    double objective = 0.0;
};

/// Global optimum of the slot-scheduling objective by exhaustive enumeration:
/// all assignment vectors, then best-first search over per-task completion
/// slots with an LP feasibility check per candidate (enumerating the
/// transmit/compute phase boundary). Guarded to tiny instances.
OracleResult exact_oracle(const OffloadInstance& inst);

}  // namespace vfc
