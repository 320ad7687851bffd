#include "vfcsim/compute/task.hpp"

#include <stdexcept>

namespace vfc {

const char* to_string(TaskState s) {
    switch (s) {
        case TaskState::Pending: return "pending";
        case TaskState::Transmitting: return "transmitting";
        case TaskState::Queued: return "queued";
        case TaskState::Computing: return "computing";
        case TaskState::Done: return "done";
        case TaskState::Failed: return "failed";
    }
    return "unknown";
}

const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "none";
        case FailureReason::Deadline: return "deadline";
        case FailureReason::Orphaned: return "orphaned";
        case FailureReason::Unassigned: return "unassigned";
    }
    return "unknown";
}

std::vector<Task> generate_tasks(int origin_id, double lambda_per_s, double dt, long tti,
                                 int& next_task_id, const TaskAttributeRanges& ranges,
                                 RngStream& rng) {
    std::vector<Task> out;
    const int arrivals = rng.poisson(lambda_per_s * dt);
    for (int i = 0; i < arrivals; ++i) {
        Task t;
        t.id = next_task_id++;
        t.origin = origin_id;
        t.up_bits = rng.uniform(ranges.up_lo_bits, ranges.up_hi_bits);
        t.req_cycles = rng.uniform(ranges.req_lo_cycles, ranges.req_hi_cycles);
        t.deadline_s = rng.uniform(ranges.deadline_lo_s, ranges.deadline_hi_s);
        t.created_tti = tti;
        t.remaining_bits = t.up_bits;
        t.remaining_cycles = t.req_cycles;
        t.state = TaskState::Pending;
        out.push_back(t);
    }
    return out;
}

double compute_delay_s(double req_cycles, double epsilon, double cpu_freq) {
    if (epsilon <= 0.0 || epsilon > 1.0) {
        throw std::invalid_argument("epsilon must be in (0, 1]");
    }
    if (cpu_freq <= 0.0) throw std::invalid_argument("cpu_freq must be > 0");
    return req_cycles / (epsilon * cpu_freq);
}

double transmission_delay_s(double up_bits, double capacity_bps) {
    if (capacity_bps <= 0.0) throw std::invalid_argument("capacity must be > 0");
    return up_bits / capacity_bps;
}

}  // namespace vfc
