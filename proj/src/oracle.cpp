#include "vfcsim/offload/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "vfcsim/offload/lp.hpp"
#include "vfcsim/offload/solvers.hpp"

namespace vfc {

namespace {

constexpr double kSlack = 1e-6;

struct TaskNodeInfo {
    bool reachable = false;
    int min_tran_end = 0;   // earliest slot by which all bits fit at full band
    int min_cpu_slots = 0;  // full-share compute slots needed
};

/// Feasibility LP for fixed assignment, phase boundaries and completion slots.
/// On success writes the shares into `sched` for the assigned tasks.
bool phase_lp_feasible(const OffloadInstance& inst, const std::vector<int>& mu,
                       const std::vector<int>& tran_end, const std::vector<int>& comp_end,
                       Schedule* sched) {
    const int n = static_cast<int>(inst.tasks.size());
    std::vector<std::vector<int>> tx_var(n, std::vector<int>(inst.num_slots, -1));
    std::vector<std::vector<int>> cpu_var(n, std::vector<int>(inst.num_slots, -1));
    int nv = 0;
    for (int k = 0; k < n; ++k) {
        if (mu[k] < 0) continue;
        const auto& t = inst.tasks[k];
        if (t.remaining_bits > 0.0) {
            for (int s = std::max(t.ready_slot, inst.start_slot); s <= tran_end[k]; ++s) {
                if (inst.cap(k, mu[k], inst.rel(s)) > 0.0) tx_var[k][inst.rel(s)] = nv++;
            }
        }
        for (int s = tran_end[k] + 1; s <= comp_end[k]; ++s) {
            if (s < inst.start_slot) continue;
            cpu_var[k][inst.rel(s)] = nv++;
        }
    }

    LinearProgram lp(nv);
    for (int k = 0; k < n; ++k) {
        if (mu[k] < 0) continue;
        const auto& t = inst.tasks[k];
        // demand rows are normalized to unit right-hand sides so the tableau
        // never mixes O(1e8) work coefficients with O(1) share budgets
        if (t.remaining_bits > 0.0) {
            std::vector<std::pair<int, double>> row;
            for (int s = 0; s < inst.num_slots; ++s) {
                if (tx_var[k][s] >= 0) {
                    row.push_back({tx_var[k][s], inst.cap(k, mu[k], s) * inst.dt / t.remaining_bits});
                }
            }
            if (row.empty()) return false;
            lp.add_constraint(std::move(row), LinearProgram::Relation::GreaterEq, 1.0);
        }
        if (t.remaining_cycles > 0.0) {
            std::vector<std::pair<int, double>> row;
            for (int s = 0; s < inst.num_slots; ++s) {
                if (cpu_var[k][s] >= 0) {
                    row.push_back({cpu_var[k][s],
                                   inst.nodes[mu[k]].cpu_freq * inst.dt / t.remaining_cycles});
                }
            }
            if (row.empty()) return false;
            lp.add_constraint(std::move(row), LinearProgram::Relation::GreaterEq, 1.0);
            // force work into the claimed completion slot so the derived
            // objective matches the search total
            if (cpu_var[k][inst.rel(comp_end[k])] >= 0) {
                lp.add_constraint({{cpu_var[k][inst.rel(comp_end[k])], 1.0}},
                                  LinearProgram::Relation::GreaterEq, 1e-5);
            }
        }
    }
    for (int s = 0; s < inst.num_slots; ++s) {
        std::vector<std::pair<int, double>> band;
        for (int k = 0; k < n; ++k) {
            if (tx_var[k][s] >= 0) band.push_back({tx_var[k][s], 1.0});
        }
        if (!band.empty()) lp.add_constraint(std::move(band), LinearProgram::Relation::LessEq, 1.0);
    }
    for (size_t j = 0; j < inst.nodes.size(); ++j) {
        for (int s = 0; s < inst.num_slots; ++s) {
            std::vector<std::pair<int, double>> cpu;
            for (int k = 0; k < n; ++k) {
                if (mu[k] == static_cast<int>(j) && cpu_var[k][s] >= 0) {
                    cpu.push_back({cpu_var[k][s], 1.0});
                }
            }
            if (!cpu.empty()) lp.add_constraint(std::move(cpu), LinearProgram::Relation::LessEq, 1.0);
        }
    }

    const auto sol = lp.solve();
    if (!sol.optimal()) return false;
    if (sched) {
        for (int k = 0; k < n; ++k) {
            sched->assigned[k] = mu[k];
            std::fill(sched->tx_share[k].begin(), sched->tx_share[k].end(), 0.0);
            std::fill(sched->cpu_share[k].begin(), sched->cpu_share[k].end(), 0.0);
            if (mu[k] < 0) continue;
            for (int s = 0; s < inst.num_slots; ++s) {
                if (tx_var[k][s] >= 0) sched->tx_share[k][s] = sol.x[tx_var[k][s]];
                if (cpu_var[k][s] >= 0) sched->cpu_share[k][s] = sol.x[cpu_var[k][s]];
            }
        }
        sched->derive_boundaries();
    }
    return true;
}

/// Tries phase boundaries for a fixed completion-slot vector, earliest
/// transmit-end first per task.
bool combo_feasible(const OffloadInstance& inst, const std::vector<int>& mu,
                    const std::vector<std::vector<TaskNodeInfo>>& info,
                    const std::vector<int>& comp_end, Schedule* sched) {
    const int n = static_cast<int>(inst.tasks.size());
    std::vector<std::vector<int>> m_options(n);
    for (int k = 0; k < n; ++k) {
        if (mu[k] < 0) {
            m_options[k] = {0};  // placeholder
            continue;
        }
        const auto& tn = info[k][mu[k]];
        const int hi = comp_end[k] - tn.min_cpu_slots;
        if (tn.min_tran_end > hi) return false;
        if (inst.tasks[k].remaining_bits <= 0.0) {
            m_options[k] = {tn.min_tran_end};  // no transmission phase to place
        } else {
            for (int m = tn.min_tran_end; m <= hi; ++m) m_options[k].push_back(m);
        }
    }
    std::vector<size_t> pick(n, 0);
    while (true) {
        std::vector<int> tran_end(n, 0);
        for (int k = 0; k < n; ++k) {
            tran_end[k] = mu[k] < 0 ? 0 : m_options[k][pick[k]];
        }
        if (phase_lp_feasible(inst, mu, tran_end, comp_end, sched)) return true;
        int k = 0;
        for (; k < n; ++k) {
            if (++pick[k] < m_options[k].size()) break;
            pick[k] = 0;
        }
        if (k == n) return false;
    }
}

}  // namespace

OracleResult exact_oracle(const OffloadInstance& inst) {
    const int n = static_cast<int>(inst.tasks.size());
    const int nn = static_cast<int>(inst.nodes.size());
    if (n > 3 || nn > 3 || inst.num_slots > 20) throw OracleSizeError{};

    OracleResult result;
    result.schedule = Schedule::empty_for(inst);
    if (n == 0) {
        result.objective = 0.0;
        return result;
    }

    // per (task, node): earliest transmit end and minimal compute slots
    std::vector<std::vector<TaskNodeInfo>> info(n, std::vector<TaskNodeInfo>(nn));
    for (int k = 0; k < n; ++k) {
        const auto& t = inst.tasks[k];
        for (int j = 0; j < nn; ++j) {
            TaskNodeInfo tn;
            tn.min_cpu_slots = static_cast<int>(
                std::ceil(t.remaining_cycles / (inst.nodes[j].cpu_freq * inst.dt) - kSlack));
            if (t.remaining_bits <= 0.0) {
                tn.min_tran_end = std::max(t.ready_slot, inst.start_slot) - 1;
                tn.reachable = true;
            } else {
                double bits = 0.0;
                for (int s = std::max(t.ready_slot, inst.start_slot); s <= inst.end_slot(); ++s) {
                    bits += inst.cap(k, j, inst.rel(s)) * inst.dt;
                    if (bits + kSlack * t.remaining_bits >= t.remaining_bits) {
                        tn.min_tran_end = s;
                        tn.reachable = true;
                        break;
                    }
                }
            }
            if (tn.reachable) {
                const int earliest_end = tn.min_tran_end + std::max(1, tn.min_cpu_slots);
                if (earliest_end > std::min(t.deadline_slot(inst.dt), inst.end_slot())) {
                    tn.reachable = false;
                }
            }
            info[k][j] = tn;
        }
    }

    // warm start from the greedy schedule
    double best = 0.0;
    {
        Schedule greedy = greedy_assign(inst);
        best = schedule_objective_unchecked(greedy, inst);
        result.schedule = std::move(greedy);
        result.objective = best;
    }

    // enumerate assignment vectors (-1 = unassigned)
    std::vector<int> mu(n, -1);
    Schedule scratch = Schedule::empty_for(inst);
    while (true) {
        double lower = 0.0;
        bool valid = true;
        for (int k = 0; k < n; ++k) {
            if (mu[k] < 0) {
                lower += inst.punish;
            } else if (!info[k][mu[k]].reachable) {
                valid = false;
                break;
            } else {
                lower += info[k][mu[k]].min_tran_end + std::max(1, info[k][mu[k]].min_cpu_slots);
            }
        }
        if (valid && lower < best - 1e-9) {
            // best-first search over completion-slot vectors of assigned tasks
            std::vector<int> assigned_tasks;
            for (int k = 0; k < n; ++k) {
                if (mu[k] >= 0) assigned_tasks.push_back(k);
            }
            double punish_part = 0.0;
            for (int k = 0; k < n; ++k) {
                if (mu[k] < 0) punish_part += inst.punish;
            }
            if (assigned_tasks.empty()) {
                if (punish_part < best - 1e-9) {
                    best = punish_part;
                    result.schedule = Schedule::empty_for(inst);
                    result.objective = best;
                }
            } else {
                using Combo = std::vector<int>;  // completion slot per assigned task
                std::set<std::pair<double, Combo>> frontier;
                Combo start;
                for (int k : assigned_tasks) {
                    start.push_back(info[k][mu[k]].min_tran_end + std::max(1, info[k][mu[k]].min_cpu_slots));
                }
                auto total_of = [&](const Combo& c) {
                    double tot = punish_part;
                    for (int e : c) tot += e;
                    return tot;
                };
                frontier.insert({total_of(start), start});
                std::set<Combo> seen{start};
                while (!frontier.empty()) {
                    const auto [total, combo] = *frontier.begin();
                    frontier.erase(frontier.begin());
                    if (total >= best - 1e-9) break;
                    std::vector<int> comp_end(n, -1);
                    bool in_bounds = true;
                    for (size_t a = 0; a < assigned_tasks.size(); ++a) {
                        const int k = assigned_tasks[a];
                        comp_end[k] = combo[a];
                        if (combo[a] > std::min(inst.tasks[k].deadline_slot(inst.dt), inst.end_slot())) {
                            in_bounds = false;
                        }
                    }
                    if (in_bounds && combo_feasible(inst, mu, info, comp_end, &scratch)) {
                        const double actual = schedule_objective_unchecked(scratch, inst);
                        if (actual < best - 1e-9) {
                            best = actual;
                            result.schedule = scratch;
                            result.objective = best;
                        }
                        break;  // later combos in this mu only have larger totals
                    }
                    for (size_t a = 0; a < assigned_tasks.size(); ++a) {
                        const int k = assigned_tasks[a];
                        Combo next = combo;
                        ++next[a];
                        if (next[a] > std::min(inst.tasks[k].deadline_slot(inst.dt), inst.end_slot())) {
                            continue;
                        }
                        if (seen.insert(next).second) frontier.insert({total_of(next), next});
                    }
                }
            }
        }
        // next assignment vector
        int k = 0;
        for (; k < n; ++k) {
            if (++mu[k] < nn) break;
            mu[k] = -1;
        }
        if (k == n) break;
    }
    result.objective = best;
    return result;
}

}  // namespace vfc
