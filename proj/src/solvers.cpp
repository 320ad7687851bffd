#include "vfcsim/offload/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vfcsim/offload/hungarian.hpp"
#include "vfcsim/offload/lp.hpp"

namespace vfc {

namespace {

constexpr double kEps = 1e-9;

/// Sequential earliest-slot packing of the items in the given order.
/// Returns feasible=false when some item's demand does not fit.
SlotPlan pack_in_order(const SlotSubproblem& sub, const std::vector<size_t>& order) {
    SlotPlan plan;
    plan.share.assign(sub.items.size(), std::vector<double>(sub.num_slots, 0.0));
    plan.last_slot.assign(sub.items.size(), -1);
    std::vector<double> free = sub.budget;
    for (size_t idx : order) {
        const auto& item = sub.items[idx];
        double demand = item.demand;
        if (demand <= 0.0) {
            plan.last_slot[idx] = item.lo_slot - 1;
            continue;
        }
        for (int s = item.lo_slot; s <= item.hi_slot; ++s) {
            if (free[s] <= kEps || item.rate[s] <= 0.0) continue;
            const double needed = demand / (item.rate[s] * sub.dt);
            const double take = std::min(free[s], needed);
            plan.share[idx][s] = take;
            free[s] -= take;
            demand -= take * item.rate[s] * sub.dt;
            plan.last_slot[idx] = s;
            if (demand <= 1e-6 * std::max(1.0, item.demand)) {
                demand = 0.0;
                break;
            }
        }
        if (demand > 0.0) return plan;  // feasible stays false
    }
    plan.feasible = true;
    return plan;
}

double packing_score(const SlotPlan& plan) {
    double s = 0.0;
    for (int v : plan.last_slot) s += v;
    return s;
}

}  // namespace

SlotPlan solve_slot_lp(const SlotSubproblem& sub) {
    SlotPlan result;
    result.share.assign(sub.items.size(), std::vector<double>(sub.num_slots, 0.0));
    result.last_slot.assign(sub.items.size(), -1);
    if (sub.items.empty()) {
        result.feasible = true;
        return result;
    }

    // variable layout: one share per (item, in-window slot with positive rate)
    std::vector<std::vector<int>> var_of(sub.items.size(), std::vector<int>(sub.num_slots, -1));
    int nv = 0;
    for (size_t i = 0; i < sub.items.size(); ++i) {
        const auto& item = sub.items[i];
        if (item.demand <= 0.0) continue;
        for (int s = std::max(0, item.lo_slot); s <= std::min(sub.num_slots - 1, item.hi_slot); ++s) {
            if (item.rate[s] > 0.0 && sub.budget[s] > kEps) var_of[i][s] = nv++;
        }
    }

    LinearProgram lp(nv);
    for (size_t i = 0; i < sub.items.size(); ++i) {
        const auto& item = sub.items[i];
        if (item.demand <= 0.0) continue;
        std::vector<std::pair<int, double>> demand_row;
        for (int s = 0; s < sub.num_slots; ++s) {
            const int v = var_of[i][s];
            if (v < 0) continue;
            const double work = item.rate[s] * sub.dt / item.demand;  // unit-normalized
            // early slots weigh less: push mass toward the window start
            lp.set_objective(v, (s + 1) * work);
            demand_row.push_back({v, work});
        }
        if (demand_row.empty()) return result;  // no way to serve this item
        lp.add_constraint(std::move(demand_row), LinearProgram::Relation::GreaterEq, 1.0);
    }
    for (int s = 0; s < sub.num_slots; ++s) {
        std::vector<std::pair<int, double>> row;
        for (size_t i = 0; i < sub.items.size(); ++i) {
            if (var_of[i][s] >= 0) row.push_back({var_of[i][s], 1.0});
        }
        if (!row.empty()) {
            lp.add_constraint(std::move(row), LinearProgram::Relation::LessEq, sub.budget[s]);
        }
    }
    const auto lp_sol = lp.solve();
    if (!lp_sol.optimal()) return result;

    // rounding orders: LP completion mass, shortest-first, earliest-deadline
    std::vector<double> mass_center(sub.items.size(), 0.0);
    for (size_t i = 0; i < sub.items.size(); ++i) {
        double mass = 0.0, weighted = 0.0;
        for (int s = 0; s < sub.num_slots; ++s) {
            const int v = var_of[i][s];
            if (v < 0) continue;
            const double work = lp_sol.x[v] * sub.items[i].rate[s] * sub.dt;
            mass += work;
            weighted += work * s;
        }
        mass_center[i] = mass > 0.0 ? weighted / mass : sub.items[i].lo_slot;
    }
    auto make_order = [&](auto key) {
        std::vector<size_t> order(sub.items.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            const auto ka = key(a), kb = key(b);
            if (ka != kb) return ka < kb;
            return sub.items[a].key < sub.items[b].key;
        });
        return order;
    };
    const std::vector<std::vector<size_t>> orders = {
        make_order([&](size_t i) { return mass_center[i]; }),
        make_order([&](size_t i) { return sub.items[i].spt_key; }),
        make_order([&](size_t i) { return sub.items[i].edf_key; }),
    };

    bool have = false;
    double best_score = std::numeric_limits<double>::infinity();
    for (const auto& order : orders) {
        SlotPlan candidate = pack_in_order(sub, order);
        if (!candidate.feasible) continue;
        const double score = packing_score(candidate);
        if (!have || score < best_score - kEps) {
            have = true;
            best_score = score;
            result = candidate;
        }
    }
    if (have) {
        result.feasible = true;
        return result;
    }

    // fall back to the raw LP shares (feasible, possibly fragmented)
    result.feasible = true;
    result.used_lp_shares = true;
    for (size_t i = 0; i < sub.items.size(); ++i) {
        for (int s = 0; s < sub.num_slots; ++s) {
            const int v = var_of[i][s];
            if (v < 0) continue;
            result.share[i][s] = lp_sol.x[v];
            if (lp_sol.x[v] > kEps) result.last_slot[i] = s;
        }
        if (sub.items[i].demand <= 0.0) result.last_slot[i] = sub.items[i].lo_slot - 1;
    }
    return result;
}

Schedule greedy_assign(const OffloadInstance& inst) {
    Schedule sched = Schedule::empty_for(inst);
    SlotLedger ledger = SlotLedger::fresh(inst);
    std::vector<size_t> order(inst.tasks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (inst.tasks[a].created_slot != inst.tasks[b].created_slot) {
            return inst.tasks[a].created_slot < inst.tasks[b].created_slot;
        }
        return inst.tasks[a].id < inst.tasks[b].id;
    });
    for (size_t k : order) {
        int best_node = -1;
        FillResult best_fill;
        for (size_t j = 0; j < inst.nodes.size(); ++j) {
            const FillResult fill = fill_task(inst, ledger, static_cast<int>(k),
                                              static_cast<int>(j), inst.tasks[k].ready_slot);
            if (!fill.ok) continue;
            if (best_node < 0 || fill.comp_end < best_fill.comp_end) {
                best_node = static_cast<int>(j);
                best_fill = fill;
            }
        }
        if (best_node >= 0) {
            apply_fill(sched, static_cast<int>(k), best_node, best_fill);
            commit_fill(ledger, best_fill, best_node);
        }
    }
    sched.derive_boundaries();
    return sched;
}

namespace {

struct RoundPlacement {
    int task = 0;
    int node = 0;
    FillResult fill;
};

struct RoundCandidate {
    std::vector<RoundPlacement> placements;
    double score = 0.0;  // sum of completion slots plus punish per task left over
};

/// Places every task the matching selected, then sweeps the leftovers
/// greedily; fills run sequentially against a scratch ledger so intra-round
/// resource coupling is respected.
RoundCandidate place_in_order(const OffloadInstance& inst, const SlotLedger& ledger,
                              const std::vector<int>& tasks, const std::vector<int>& preferred_node,
                              int round_slot, int window_end) {
    RoundCandidate cand;
    SlotLedger scratch = ledger;
    for (size_t i = 0; i < tasks.size(); ++i) {
        const int k = tasks[i];
        int best_node = -1;
        FillResult best_fill;
        if (preferred_node[i] >= 0) {
            FillResult fill = fill_task(inst, scratch, k, preferred_node[i], round_slot);
            if (fill.ok && fill.comp_end <= window_end) {
                best_node = preferred_node[i];
                best_fill = std::move(fill);
            }
        }
        if (best_node < 0) {
            for (size_t j = 0; j < inst.nodes.size(); ++j) {
                FillResult fill = fill_task(inst, scratch, k, static_cast<int>(j), round_slot);
                if (!fill.ok || fill.comp_end > window_end) continue;
                if (best_node < 0 || fill.comp_end < best_fill.comp_end) {
                    best_node = static_cast<int>(j);
                    best_fill = std::move(fill);
                }
            }
        }
        if (best_node < 0) {
            cand.score += inst.punish;
            continue;
        }
        cand.score += best_fill.comp_end;
        commit_fill(scratch, best_fill, best_node);
        cand.placements.push_back({k, best_node, std::move(best_fill)});
    }
    return cand;
}

}  // namespace

void window_offload_round(const OffloadInstance& inst, SlotLedger& ledger, Schedule& sched,
                          int round_slot, int ws, int* matches) {
    std::vector<int> pending;
    for (size_t k = 0; k < inst.tasks.size(); ++k) {
        const auto& t = inst.tasks[k];
        if (sched.assigned[k] >= 0) continue;
        if (t.created_slot > round_slot) continue;
        if (t.deadline_slot(inst.dt) < round_slot) continue;
        pending.push_back(static_cast<int>(k));
    }
    if (matches) *matches = 0;
    if (pending.empty()) return;

    const int window_end = round_slot + ws - 1;
    const double punish_s = inst.punish * inst.dt;

    std::vector<std::vector<double>> cost(pending.size(),
                                          std::vector<double>(inst.nodes.size(), kInfeasibleCost));
    for (size_t r = 0; r < pending.size(); ++r) {
        const int k = pending[r];
        for (size_t j = 0; j < inst.nodes.size(); ++j) {
            const FillResult fill = fill_task(inst, ledger, k, static_cast<int>(j), round_slot);
            if (!fill.ok || fill.comp_end > window_end) continue;
            cost[r][j] = static_cast<double>(fill.comp_end - round_slot + 1) * inst.dt;
        }
    }
    const PaddedAssignment match = hungarian_assign(cost, punish_s);

    // candidate 1: honor the matching, then sweep what it left out
    std::vector<int> preferred(pending.size(), -1);
    for (size_t r = 0; r < pending.size(); ++r) preferred[r] = match.row_to_col[r];
    const RoundCandidate matched = place_in_order(inst, ledger, pending, preferred, round_slot,
                                                  window_end);
    // candidate 2: plain arrival-order greedy; the matching's estimates are
    // taken against the pre-round ledger, so under heavy intra-round coupling
    // the sequential sweep can beat it
    const RoundCandidate greedy = place_in_order(inst, ledger, pending,
                                                 std::vector<int>(pending.size(), -1), round_slot,
                                                 window_end);
    const RoundCandidate& chosen = greedy.score < matched.score - 1e-9 ? greedy : matched;
    for (const RoundPlacement& p : chosen.placements) {
        apply_fill(sched, p.task, p.node, p.fill);
        commit_fill(ledger, p.fill, p.node);
        if (matches) ++(*matches);
    }
}

namespace {

/// Rebuilds the compute shares with the transmit slots fixed.
bool reoptimize_compute(Schedule& sched, const OffloadInstance& inst) {
    for (size_t j = 0; j < inst.nodes.size(); ++j) {
        SlotSubproblem sub;
        sub.num_slots = inst.num_slots;
        sub.dt = inst.dt;
        sub.budget.assign(inst.num_slots, 1.0);
        std::vector<int> members;
        for (size_t k = 0; k < inst.tasks.size(); ++k) {
            if (sched.assigned[k] != static_cast<int>(j)) continue;
            if (inst.tasks[k].remaining_cycles <= 0.0) continue;
            const auto& t = inst.tasks[k];
            SlotSubproblem::Item item;
            item.key = static_cast<int>(k);
            const int after_tx = sched.tran_end[k] >= 0 ? sched.tran_end[k] + 1
                                                        : std::max(t.ready_slot, inst.start_slot);
            item.lo_slot = std::max(0, inst.rel(after_tx));
            item.hi_slot = inst.rel(std::min(t.deadline_slot(inst.dt), inst.end_slot()));
            if (item.lo_slot > item.hi_slot) return false;
            item.demand = t.remaining_cycles;
            item.rate.assign(inst.num_slots, inst.nodes[j].cpu_freq);
            item.edf_key = t.deadline_slot(inst.dt);
            item.spt_key = t.remaining_cycles / inst.nodes[j].cpu_freq;
            sub.items.push_back(std::move(item));
            members.push_back(static_cast<int>(k));
        }
        if (sub.items.empty()) continue;
        const SlotPlan plan = solve_slot_lp(sub);
        if (!plan.feasible) return false;
        for (size_t i = 0; i < members.size(); ++i) sched.cpu_share[members[i]] = plan.share[i];
    }
    sched.derive_boundaries();
    return true;
}

/// Rebuilds the transmit shares with the compute slots fixed.
bool reoptimize_transmit(Schedule& sched, const OffloadInstance& inst) {
    SlotSubproblem sub;
    sub.num_slots = inst.num_slots;
    sub.dt = inst.dt;
    sub.budget.assign(inst.num_slots, 1.0);
    std::vector<int> members;
    for (size_t k = 0; k < inst.tasks.size(); ++k) {
        const int j = sched.assigned[k];
        if (j < 0 || inst.tasks[k].remaining_bits <= 0.0) continue;
        const auto& t = inst.tasks[k];
        SlotSubproblem::Item item;
        item.key = static_cast<int>(k);
        item.lo_slot = inst.rel(std::max(t.ready_slot, inst.start_slot));
        int hi = std::min(t.deadline_slot(inst.dt), inst.end_slot());
        if (sched.comp_start[k] >= 0) hi = std::min(hi, sched.comp_start[k] - 1);
        item.hi_slot = inst.rel(hi);
        if (item.lo_slot > item.hi_slot) return false;
        item.demand = t.remaining_bits;
        item.rate.assign(inst.num_slots, 0.0);
        for (int s = 0; s < inst.num_slots; ++s) item.rate[s] = inst.cap(static_cast<int>(k), j, s);
        item.edf_key = sched.comp_start[k] >= 0 ? sched.comp_start[k] : t.deadline_slot(inst.dt);
        double mean_rate = 0.0;
        for (int s = item.lo_slot; s <= item.hi_slot; ++s) mean_rate += item.rate[s];
        mean_rate /= std::max(1, item.hi_slot - item.lo_slot + 1);
        item.spt_key = mean_rate > 0.0 ? t.remaining_bits / mean_rate : 1e18;
        sub.items.push_back(std::move(item));
        members.push_back(static_cast<int>(k));
    }
    if (sub.items.empty()) return true;
    const SlotPlan plan = solve_slot_lp(sub);
    if (!plan.feasible) return false;
    for (size_t i = 0; i < members.size(); ++i) sched.tx_share[members[i]] = plan.share[i];
    sched.derive_boundaries();
    return true;
}

}  // namespace

Schedule ao_refine(const Schedule& schedule, const OffloadInstance& inst, double tol,
                   int max_iters, SolverStats* stats) {
    Schedule current = schedule;
    current.derive_boundaries();
    double obj = schedule_objective_unchecked(current, inst);
    if (stats) {
        stats->initial_objective = obj;
        stats->objective_trace.push_back(obj);
    }
    for (int iter = 0; iter < max_iters; ++iter) {
        Schedule candidate = current;
        if (!reoptimize_compute(candidate, inst)) break;
        if (!reoptimize_transmit(candidate, inst)) break;
        const double cand_obj = schedule_objective_unchecked(candidate, inst);
        if (cand_obj > obj + 1e-9) break;  // never accept a worse schedule
        const double dx = Schedule::indicator_distance(candidate.tx_share, current.tx_share);
        const double dy = Schedule::indicator_distance(candidate.cpu_share, current.cpu_share);
        current = std::move(candidate);
        obj = cand_obj;
        if (stats) {
            ++stats->ao_iterations;
            stats->objective_trace.push_back(obj);
        }
        if (dx < tol && dy < tol) break;
    }
    if (stats) stats->final_objective = obj;
    return current;
}

Schedule who_solve(const OffloadInstance& inst, int ws, double tol, int max_iters,
                   SolverStats* stats) {
    Schedule sched = Schedule::empty_for(inst);
    SlotLedger ledger = SlotLedger::fresh(inst);
    for (int s = inst.start_slot; s <= inst.end_slot(); ++s) {
        int matched = 0;
        window_offload_round(inst, ledger, sched, s, ws, &matched);
        if (matched > 0) {
            // committed tasks are re-scheduled together with the new arrivals
            sched.derive_boundaries();
            sched = repack_schedule(inst, sched);
            ledger = SlotLedger::after(inst, sched);
            if (stats) ++stats->hungarian_rounds;
        }
    }
    sched.derive_boundaries();
    return ao_refine(sched, inst, tol, max_iters, stats);
}

}  // namespace vfc
