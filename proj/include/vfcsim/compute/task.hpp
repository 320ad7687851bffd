#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vfcsim/core/rng.hpp"

namespace vfc {

enum class TaskState { Pending, Transmitting, Queued, Computing, Done, Failed };

const char* to_string(TaskState s);

enum class FailureReason { None, Deadline, Orphaned, Unassigned };

const char* to_string(FailureReason r);

/// One offloadable unit of work.
struct Task {
    int id = 0;
    int origin = 0;                   // task-vehicle id
    double up_bits = 0.0;
    double req_cycles = 0.0;
    double deadline_s = 0.0;          // tau
    long created_tti = 0;
    std::optional<int> assigned_node;
    double remaining_bits = 0.0;
    double remaining_cycles = 0.0;
    TaskState state = TaskState::Pending;
    FailureReason failure = FailureReason::None;
    long tran_start_tti = -1;
    long tran_end_tti = -1;
    long comp_start_tti = -1;
    long comp_end_tti = -1;
    bool result_correct = true;
    double extra_ready_delay_s = 0.0;  // wired backhaul sojourn for cloud offloads

    bool finished() const { return state == TaskState::Done || state == TaskState::Failed; }

    /// Deadline rule (strict past tau): alive while (tti - created)*dt <= tau.
    bool past_deadline(long tti, double dt) const {
        return static_cast<double>(tti - created_tti) * dt > deadline_s + 1e-9;
    }

    /// Wall-clock latency from arrival (start of creation TTI) to result
    /// (end of completion TTI).
    double latency_s(double dt) const {
        return static_cast<double>(comp_end_tti - created_tti + 1) * dt;
    }
};

/// Uniform sampling ranges for generated task attributes.
struct TaskAttributeRanges {
    double deadline_lo_s = 0.2, deadline_hi_s = 1.0;
    double up_lo_bits = 0.02e6, up_hi_bits = 1.0e6;
    double req_lo_cycles = 0.1e9, req_hi_cycles = 0.3e9;
};

/// Poisson arrivals for one task vehicle over one TTI; attributes drawn
/// uniformly from the configured ranges.
std::vector<Task> generate_tasks(int origin_id, double lambda_per_s, double dt, long tti,
                                 int& next_task_id, const TaskAttributeRanges& ranges,
                                 RngStream& rng);

/// Expected computation delay req / (epsilon * F).
double compute_delay_s(double req_cycles, double epsilon, double cpu_freq);

/// Expected transmission delay up / C.
double transmission_delay_s(double up_bits, double capacity_bps);

}  // namespace vfc
