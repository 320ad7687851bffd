#include "vfcsim/offload/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vfc {

namespace {
constexpr double kShareEps = 1e-9;
// Producers (fills, LPs) satisfy demands to ~1e-6 relative; the validator
// allows an order of magnitude more so borderline completions never flap.
constexpr double kDemandSlack = 1e-6;
constexpr double kValidatorSlack = 1e-5;
}  // namespace

Schedule Schedule::empty_for(const OffloadInstance& inst) {
    Schedule s;
    s.start_slot = inst.start_slot;
    s.num_slots = inst.num_slots;
    const size_t n = inst.tasks.size();
    s.assigned.assign(n, -1);
    s.tx_share.assign(n, std::vector<double>(inst.num_slots, 0.0));
    s.cpu_share.assign(n, std::vector<double>(inst.num_slots, 0.0));
    s.tran_start.assign(n, -1);
    s.tran_end.assign(n, -1);
    s.comp_start.assign(n, -1);
    s.comp_end.assign(n, -1);
    return s;
}

void Schedule::derive_boundaries() {
    const size_t n = assigned.size();
    for (size_t k = 0; k < n; ++k) {
        tran_start[k] = tran_end[k] = comp_start[k] = comp_end[k] = -1;
        for (int s = 0; s < num_slots; ++s) {
            if (tx_share[k][s] > kShareEps) {
                if (tran_start[k] < 0) tran_start[k] = start_slot + s;
                tran_end[k] = start_slot + s;
            }
            if (cpu_share[k][s] > kShareEps) {
                if (comp_start[k] < 0) comp_start[k] = start_slot + s;
                comp_end[k] = start_slot + s;
            }
        }
    }
}

double Schedule::indicator_distance(const std::vector<std::vector<double>>& a,
                                    const std::vector<std::vector<double>>& b) {
    double sum = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        for (size_t s = 0; s < a[k].size(); ++s) {
            const double ia = a[k][s] > kShareEps ? 1.0 : 0.0;
            const double ib = b[k][s] > kShareEps ? 1.0 : 0.0;
            sum += (ia - ib) * (ia - ib);
        }
    }
    return std::sqrt(sum);
}

std::vector<ConstraintViolation> validate_schedule(const Schedule& s, const OffloadInstance& inst) {
    std::vector<ConstraintViolation> out;
    auto violate = [&](const char* label, std::string detail) {
        out.push_back({label, std::move(detail)});
    };
    const size_t n = inst.tasks.size();
    if (s.assigned.size() != n || s.tx_share.size() != n || s.cpu_share.size() != n) {
        violate("C1", "schedule shape does not match the instance");
        return out;
    }

    for (size_t k = 0; k < n; ++k) {
        const OffloadTask& task = inst.tasks[k];
        const int j = s.assigned[k];
        if (j < -1 || j >= static_cast<int>(inst.nodes.size())) {
            violate("C2", "task " + std::to_string(task.id) + ": node index out of range");
            continue;
        }
        bool any_share = false;
        for (int t = 0; t < inst.num_slots; ++t) {
            const double tx = s.tx_share[k][t];
            const double cpu = s.cpu_share[k][t];
            if (tx < -kShareEps || tx > 1.0 + kShareEps || cpu < -kShareEps || cpu > 1.0 + kShareEps ||
                !std::isfinite(tx) || !std::isfinite(cpu)) {
                violate("C1", "task " + std::to_string(task.id) + ": share outside [0,1]");
                break;
            }
            if (tx > kShareEps && cpu > kShareEps) {
                violate("C3", "task " + std::to_string(task.id) + ": transmit and compute share the slot " +
                                  std::to_string(inst.start_slot + t));
            }
            if (tx > kShareEps || cpu > kShareEps) any_share = true;
            if ((tx > kShareEps || cpu > kShareEps) && inst.start_slot + t < task.ready_slot) {
                violate("C7", "task " + std::to_string(task.id) + ": work before the ready slot");
            }
        }
        if (j < 0 && any_share) {
            violate("C3", "task " + std::to_string(task.id) + ": shares granted without assignment");
        }

        // boundary consistency (C4-C7)
        int ts = -1, te = -1, cs = -1, ce = -1;
        for (int t = 0; t < inst.num_slots; ++t) {
            if (s.tx_share[k][t] > kShareEps) {
                if (ts < 0) ts = inst.start_slot + t;
                te = inst.start_slot + t;
            }
            if (s.cpu_share[k][t] > kShareEps) {
                if (cs < 0) cs = inst.start_slot + t;
                ce = inst.start_slot + t;
            }
        }
        if (ts != s.tran_start[k] || te != s.tran_end[k]) {
            violate("C6", "task " + std::to_string(task.id) + ": transmission boundaries inconsistent");
        }
        if (cs != s.comp_start[k] || ce != s.comp_end[k]) {
            violate("C4", "task " + std::to_string(task.id) + ": computation boundaries inconsistent");
        }
        if (te >= 0 && cs >= 0 && te >= cs) {
            violate("C8", "task " + std::to_string(task.id) + ": computation starts before transmission ends");
        }
        if (j >= 0 && ce >= 0 && ce > task.deadline_slot(inst.dt)) {
            violate("C9", "task " + std::to_string(task.id) + ": completion past the delay bound");
        }

        // demand coverage (C14, C15)
        if (j >= 0) {
            double bits = 0.0, cycles = 0.0;
            for (int t = 0; t < inst.num_slots; ++t) {
                bits += s.tx_share[k][t] * inst.cap(static_cast<int>(k), j, t) * inst.dt;
                cycles += s.cpu_share[k][t] * inst.nodes[j].cpu_freq * inst.dt;
            }
            if (bits + kValidatorSlack * std::max(1.0, task.remaining_bits) < task.remaining_bits) {
                violate("C14", "task " + std::to_string(task.id) + ": delivered bits below the upload size");
            }
            if (cycles + kValidatorSlack * std::max(1.0, task.remaining_cycles) < task.remaining_cycles) {
                violate("C15", "task " + std::to_string(task.id) + ": executed cycles below the requirement");
            }
        }
    }

    // per-slot budgets (C10/C12 band, C11/C13 CPU)
    for (int t = 0; t < inst.num_slots; ++t) {
        double band = 0.0;
        for (size_t k = 0; k < n; ++k) band += s.tx_share[k][t];
        if (band > 1.0 + 1e-6) {
            violate("C10", "slot " + std::to_string(inst.start_slot + t) + ": bandwidth oversubscribed");
        }
    }
    for (size_t j = 0; j < inst.nodes.size(); ++j) {
        for (int t = 0; t < inst.num_slots; ++t) {
            double cpu = 0.0;
            for (size_t k = 0; k < n; ++k) {
                if (s.assigned[k] == static_cast<int>(j)) cpu += s.cpu_share[k][t];
            }
            if (cpu > 1.0 + 1e-6) {
                violate("C11", "node " + std::to_string(inst.nodes[j].id) + " slot " +
                                   std::to_string(inst.start_slot + t) + ": CPU oversubscribed");
            }
        }
    }
    return out;
}

double schedule_objective_unchecked(const Schedule& s, const OffloadInstance& inst) {
    double total = 0.0;
    for (size_t k = 0; k < inst.tasks.size(); ++k) {
        if (s.assigned[k] >= 0 && s.comp_end[k] >= 0) {
            total += static_cast<double>(s.comp_end[k]);
        } else if (s.assigned[k] >= 0 && inst.tasks[k].remaining_cycles <= 0.0) {
            total += static_cast<double>(inst.start_slot);  // nothing left to run
        } else {
            total += inst.punish;
        }
    }
    return total;
}

double schedule_objective(const Schedule& s, const OffloadInstance& inst) {
    const auto violations = validate_schedule(s, inst);
    if (!violations.empty()) {
        std::string labels;
        for (const auto& v : violations) {
            if (!labels.empty()) labels += ",";
            labels += v.label;
        }
        throw std::invalid_argument("schedule violates " + labels + ": " + violations.front().detail);
    }
    return schedule_objective_unchecked(s, inst);
}

SlotLedger SlotLedger::fresh(const OffloadInstance& inst) {
    SlotLedger l;
    l.band_free.assign(inst.num_slots, 1.0);
    l.cpu_free.assign(inst.nodes.size(), std::vector<double>(inst.num_slots, 1.0));
    return l;
}

SlotLedger SlotLedger::after(const OffloadInstance& inst, const Schedule& s) {
    SlotLedger l = fresh(inst);
    for (size_t k = 0; k < inst.tasks.size(); ++k) {
        for (int t = 0; t < inst.num_slots; ++t) {
            l.band_free[t] = std::max(0.0, l.band_free[t] - s.tx_share[k][t]);
            if (s.assigned[k] >= 0) {
                auto& cpu = l.cpu_free[s.assigned[k]][t];
                cpu = std::max(0.0, cpu - s.cpu_share[k][t]);
            }
        }
    }
    return l;
}

FillResult fill_task(const OffloadInstance& inst, const SlotLedger& ledger, int task, int node,
                     int from_slot, bool best_effort) {
    FillResult fill;
    const OffloadTask& t = inst.tasks[task];
    fill.tx_share.assign(inst.num_slots, 0.0);
    fill.cpu_share.assign(inst.num_slots, 0.0);

    const int first = std::max({from_slot, t.ready_slot, inst.start_slot});
    const int last = std::min(t.deadline_slot(inst.dt), inst.end_slot());
    if (first > last) return fill;

    double bits = t.remaining_bits;
    int slot = first;
    int tran_end = first - 1;  // sentinel: compute may start at `first`
    if (bits > 0.0) {
        tran_end = -1;
        for (; slot <= last; ++slot) {
            const int rel = inst.rel(slot);
            const double rate = inst.cap(task, node, rel);
            const double free = ledger.band_free[rel];
            if (rate <= 0.0 || free <= kShareEps) continue;
            const double needed_share = bits / (rate * inst.dt);
            const double take = std::min(free, needed_share);
            fill.tx_share[rel] = take;
            bits -= take * rate * inst.dt;
            tran_end = slot;
            if (bits <= kDemandSlack * std::max(1.0, t.remaining_bits)) {
                bits = 0.0;
                break;
            }
        }
        if (bits > 0.0 || tran_end < 0) {
            if (!best_effort) {
                fill.tx_share.assign(inst.num_slots, 0.0);
            }
            return fill;  // bits do not fit
        }
        fill.tran_end = tran_end;
    }

    double cycles = t.remaining_cycles;
    if (cycles <= 0.0) {
        fill.comp_end = tran_end >= first ? tran_end : first - 1;
        fill.ok = true;
        return fill;
    }
    const double rate = inst.nodes[node].cpu_freq;
    if (rate <= 0.0) return fill;
    for (slot = std::max(tran_end + 1, first); slot <= last; ++slot) {
        const int rel = inst.rel(slot);
        const double free = ledger.cpu_free[node][rel];
        if (free <= kShareEps) continue;
        const double needed_share = cycles / (rate * inst.dt);
        const double take = std::min(free, needed_share);
        fill.cpu_share[rel] = take;
        cycles -= take * rate * inst.dt;
        if (cycles <= kDemandSlack * std::max(1.0, t.remaining_cycles)) {
            fill.comp_end = slot;
            fill.ok = true;
            return fill;
        }
    }
    if (!best_effort) {
        fill.tx_share.assign(inst.num_slots, 0.0);
        fill.cpu_share.assign(inst.num_slots, 0.0);
        fill.tran_end = -1;
    }
    return fill;  // cycles do not fit before the deadline/window end
}

void commit_fill(SlotLedger& ledger, const FillResult& fill, int node) {
    for (size_t s = 0; s < fill.tx_share.size(); ++s) {
        ledger.band_free[s] = std::max(0.0, ledger.band_free[s] - fill.tx_share[s]);
        ledger.cpu_free[node][s] = std::max(0.0, ledger.cpu_free[node][s] - fill.cpu_share[s]);
    }
}

void apply_fill(Schedule& s, int task, int node, const FillResult& fill) {
    s.assigned[task] = node;
    s.tx_share[task] = fill.tx_share;
    s.cpu_share[task] = fill.cpu_share;
}

Schedule repack_schedule(const OffloadInstance& inst, const Schedule& sched) {
    std::vector<int> members;
    for (size_t k = 0; k < inst.tasks.size(); ++k) {
        if (sched.assigned[k] >= 0) members.push_back(static_cast<int>(k));
    }
    if (members.empty()) return sched;

    auto tx_slots_needed = [&](int k) {
        const int j = sched.assigned[k];
        const double per_slot = inst.cap(k, j, 0) * inst.dt;
        return per_slot > 0.0 ? inst.tasks[k].remaining_bits / per_slot : 1e18;
    };
    auto cpu_slots_needed = [&](int k) {
        const int j = sched.assigned[k];
        const double per_slot = inst.nodes[j].cpu_freq * inst.dt;
        return per_slot > 0.0 ? inst.tasks[k].remaining_cycles / per_slot : 1e18;
    };
    auto ordered = [&](auto key) {
        std::vector<int> order = members;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const auto ka = key(a), kb = key(b);
            if (ka != kb) return ka < kb;
            return inst.tasks[a].id < inst.tasks[b].id;
        });
        return order;
    };
    const std::vector<std::vector<int>> orders = {
        ordered([&](int k) { return static_cast<double>(inst.tasks[k].created_slot); }),
        ordered([&](int k) { return tx_slots_needed(k); }),
        ordered([&](int k) { return tx_slots_needed(k) + cpu_slots_needed(k); }),
        ordered([&](int k) { return static_cast<double>(inst.tasks[k].deadline_slot(inst.dt)); }),
    };

    Schedule best = sched;
    double best_obj = schedule_objective_unchecked(sched, inst);
    for (const auto& order : orders) {
        Schedule cand = Schedule::empty_for(inst);
        for (size_t k = 0; k < inst.tasks.size(); ++k) cand.assigned[k] = sched.assigned[k];
        SlotLedger ledger = SlotLedger::fresh(inst);
        bool ok = true;
        for (int k : order) {
            const FillResult fill = fill_task(inst, ledger, k, sched.assigned[k],
                                              inst.tasks[k].ready_slot);
            if (!fill.ok) {
                ok = false;
                break;
            }
            apply_fill(cand, k, sched.assigned[k], fill);
            commit_fill(ledger, fill, sched.assigned[k]);
        }
        if (!ok) continue;
        cand.derive_boundaries();
        const double obj = schedule_objective_unchecked(cand, inst);
        if (obj < best_obj - 1e-9) {
            best_obj = obj;
            best = cand;
        }
    }
    return best;
}

OffloadInstance random_small_instance(RngStream& rng, int max_tasks, int max_nodes, int num_slots) {
    OffloadInstance inst;
    inst.start_slot = 0;
    inst.num_slots = num_slots;
    inst.dt = 0.05;
    inst.punish = 100.0;

    const int n_nodes = 1 + static_cast<int>(rng.uniform_index(max_nodes));
    for (int j = 0; j < n_nodes; ++j) {
        inst.nodes.push_back({j, rng.uniform(2.0e9, 6.0e9)});
    }
    const int n_tasks = 1 + static_cast<int>(rng.uniform_index(max_tasks));
    for (int k = 0; k < n_tasks; ++k) {
        OffloadTask t;
        t.id = k;
        t.created_slot = static_cast<int>(rng.uniform_index(std::max(1, num_slots * 3 / 5)));
        t.ready_slot = t.created_slot;
        t.up_bits = rng.uniform(0.02e6, 1.0e6);
        t.req_cycles = rng.uniform(0.1e9, 0.3e9);
        t.remaining_bits = t.up_bits;
        t.remaining_cycles = t.req_cycles;
        t.deadline_s = rng.uniform(0.3, 1.0);
        inst.tasks.push_back(t);
    }
    inst.capacity.assign(n_tasks, std::vector<std::vector<double>>(
                                      n_nodes, std::vector<double>(num_slots, 0.0)));
    for (int k = 0; k < n_tasks; ++k) {
        for (int j = 0; j < n_nodes; ++j) {
            const double base = rng.uniform(5.0e6, 8.0e7);  // bits/s at full band
            for (int s = 0; s < num_slots; ++s) {
                inst.capacity[k][j][s] = base * rng.uniform(0.85, 1.15);
            }
        }
    }
    return inst;
}

}  // namespace vfc
