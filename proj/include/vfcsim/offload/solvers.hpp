#pragma once

#include <vector>

#include "vfcsim/offload/instance.hpp"

namespace vfc {

/// One resource dimension (the shared band, or one node's CPU) over a window.
struct SlotSubproblem {
    struct Item {
        int key = 0;                // caller's task index
        int lo_slot = 0;            // window-relative inclusive range
        int hi_slot = -1;
        double demand = 0.0;        // bits or cycles
        std::vector<double> rate;   // per window slot at full share
        double edf_key = 0.0;       // deadline, for earliest-deadline ordering
        double spt_key = 0.0;       // full-share processing time, for shortest-first ordering
    };
    int num_slots = 0;
    double dt = 0.05;
    std::vector<double> budget;     // free share per slot, in [0,1]
    std::vector<Item> items;
};

struct SlotPlan {
    bool feasible = false;
    bool used_lp_shares = false;    // rounding fell back to the raw LP solution
    std::vector<std::vector<double>> share;  // [item][window slot]
    std::vector<int> last_slot;              // window-relative completion slot per item
};

/// LP relaxation of one slot-allocation subproblem (fractional shares,
/// early-slot-weighted objective) followed by earliest-slot-filling rounding.
/// The rounding tries LP-mass, shortest-first and earliest-deadline orders and
/// keeps the best feasible packing; if no sequential packing fits, the raw LP
/// shares are returned, so a feasible LP never yields an infeasible plan.
SlotPlan solve_slot_lp(const SlotSubproblem& sub);

struct SolverStats {
    int hungarian_rounds = 0;
    int ao_iterations = 0;
    std::vector<double> objective_trace;
    double initial_objective = 0.0;
    double final_objective = 0.0;
};

/// Creation-order greedy: every task takes the node with the earliest
/// estimated completion (earliest-slot fill over the remaining resources),
/// skipping nodes that cannot meet the delay bound; unassignable tasks stay
/// unassigned.
Schedule greedy_assign(const OffloadInstance& inst);

/// One window round: cost matrix of estimated completion delays for the still
/// unassigned tasks, Kuhn-Munkres matching, then provisional earliest-slot
/// plans for the matched pairs. Entries infeasible within min(deadline,
/// round_slot + ws) are infinite; rows can match dummies.
void window_offload_round(const OffloadInstance& inst, SlotLedger& ledger, Schedule& sched,
                          int round_slot, int ws, int* matches = nullptr);

/// Alternating optimization over the slot allocation with the assignment
/// fixed: fix transmit slots and re-solve the computation subproblem per
/// node, then fix compute slots and re-solve the shared-band transmission
/// subproblem, until the indicator change norms drop below tol. The objective
/// is non-increasing across iterations by construction (worsening steps are
/// rejected) and the input schedule is returned unchanged when it is already
/// a fixed point.
Schedule ao_refine(const Schedule& schedule, const OffloadInstance& inst, double tol,
                   int max_iters, SolverStats* stats = nullptr);

/// Full window-based Hungarian + alternating optimization pipeline: one
/// assignment round per slot (unassigned tasks retry in later rounds until
/// their deadline passes), then AO refinement of the slot allocation.
Schedule who_solve(const OffloadInstance& inst, int ws, double tol, int max_iters,
                   SolverStats* stats = nullptr);

}  // namespace vfc
