#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vfcsim/core/rng.hpp"

namespace vfc {

/// One task as seen by the slot schedulers. Bits/cycles are the *remaining*
/// demands at the window start so mid-flight re-planning uses the same code
/// path as fresh assignment.
struct OffloadTask {
    int id = 0;
    int created_slot = 0;  // absolute slot t'
    int ready_slot = 0;    // first slot transmission may run
    double up_bits = 0.0;
    double req_cycles = 0.0;
    double remaining_bits = 0.0;
    double remaining_cycles = 0.0;
    double deadline_s = 0.0;  // tau, relative to created_slot

    /// Last absolute slot in which work may still run (delay constraint).
    int deadline_slot(double dt) const {
        return created_slot + static_cast<int>(std::floor(deadline_s / dt + 1e-9));
    }
};

struct OffloadNode {
    int id = 0;
    double cpu_freq = 0.0;  // cycles/s
};

/// Slot-allocation problem over a window of num_slots TTIs starting at
/// start_slot. capacity[k][j][s] is the full-band transmission rate of task k
/// toward node j during window slot s.
struct OffloadInstance {
    std::vector<OffloadTask> tasks;
    std::vector<OffloadNode> nodes;
    std::vector<std::vector<std::vector<double>>> capacity;
    int start_slot = 0;
    int num_slots = 0;
    double dt = 0.05;
    double punish = 12000.0;  // objective units (slots)

    double cap(int task, int node, int slot) const { return capacity[task][node][slot]; }

    /// Window slot index for an absolute slot, clamped into the window.
    int rel(int absolute_slot) const { return absolute_slot - start_slot; }
    int end_slot() const { return start_slot + num_slots - 1; }
};

/// A (possibly fractional-share) slot schedule. Binary transmit/compute
/// indicators are derived as share > 0; per-slot shares model the bandwidth
/// and CPU fractions granted to each task.
struct Schedule {
    int start_slot = 0;
    int num_slots = 0;
    std::vector<int> assigned;                   // node index or -1 per task
    std::vector<std::vector<double>> tx_share;   // [task][window slot]
    std::vector<std::vector<double>> cpu_share;  // [task][window slot]
    // phase boundaries, absolute slots, -1 when the phase has no slots
    std::vector<int> tran_start, tran_end, comp_start, comp_end;

    static Schedule empty_for(const OffloadInstance& inst);
    void derive_boundaries();

    /// Euclidean norm of the difference between the binary indicator vectors
    /// of two schedules (the alternating-optimization stopping metric).
    static double indicator_distance(const std::vector<std::vector<double>>& a,
                                     const std::vector<std::vector<double>>& b);
};

struct ConstraintViolation {
    std::string label;   // C1..C15
    std::string detail;
};

/// Checks C1-C15 against the instance. Empty result means the schedule is
/// feasible. C16 (UAV kinematics) is out of scope here.
std::vector<ConstraintViolation> validate_schedule(const Schedule& s, const OffloadInstance& inst);

/// Sum over tasks of the completion slot, plus `punish` per unassigned task.
/// Throws std::invalid_argument listing the violated constraint labels when
/// the schedule is invalid.
double schedule_objective(const Schedule& s, const OffloadInstance& inst);

/// Objective without validation (for internal iteration).
double schedule_objective_unchecked(const Schedule& s, const OffloadInstance& inst);

/// Remaining per-slot resource fractions while schedules are built up.
struct SlotLedger {
    std::vector<double> band_free;              // [window slot]
    std::vector<std::vector<double>> cpu_free;  // [node][window slot]

    static SlotLedger fresh(const OffloadInstance& inst);
    /// Ledger with every share already granted by `s` subtracted.
    static SlotLedger after(const OffloadInstance& inst, const Schedule& s);
};

struct FillResult {
    bool ok = false;
    std::vector<double> tx_share;   // [window slot]
    std::vector<double> cpu_share;  // [window slot]
    int tran_end = -1;              // absolute slots
    int comp_end = -1;
};

/// Earliest-slot sequential fill of one task onto one node: transmit first
/// (consuming free band share), then compute (consuming free CPU share),
/// respecting ready slot, window end and the delay constraint. Does not
/// mutate the ledger; the caller commits on success. With best_effort the
/// partial shares are kept even when the demands do not fit (ok stays false),
/// so mid-flight tasks keep making progress across window boundaries.
FillResult fill_task(const OffloadInstance& inst, const SlotLedger& ledger, int task, int node,
                     int from_slot, bool best_effort = false);

void commit_fill(SlotLedger& ledger, const FillResult& fill, int node);
void apply_fill(Schedule& s, int task, int node, const FillResult& fill);

/// Rebuilds every assigned task's slot plan from scratch (assignments kept),
/// trying several deterministic packing orders (arrival, transmit-light
/// first, shortest total work, earliest deadline) and keeping the best
/// feasible result. Falls back to the input schedule when no full repack
/// fits, so the result is never worse.
Schedule repack_schedule(const OffloadInstance& inst, const Schedule& sched);

/// Uniformly random small instance for solver cross-checks and benchmarks.
OffloadInstance random_small_instance(RngStream& rng, int max_tasks = 3, int max_nodes = 3,
                                      int num_slots = 20);

}  // namespace vfc
