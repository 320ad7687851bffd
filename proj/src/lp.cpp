#include "vfcsim/offload/lp.hpp"

#include <cmath>
#include <limits>

namespace vfc {

namespace {
constexpr double kEps = 1e-9;

struct Tableau {
    int rows = 0;
    int cols = 0;  // total columns including rhs
    std::vector<double> a;
    std::vector<int> basis;

    double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    void pivot(int pr, int pc) {
        const double p = at(pr, pc);
        for (int c = 0; c < cols; ++c) at(pr, c) /= p;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (std::abs(f) < kEps) continue;
            for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[pr] = pc;
    }

    // Bland's rule over the given objective row; returns false when optimal.
    bool iterate(std::vector<double>& z, double& z_value, int var_limit) {
        int pc = -1;
        for (int c = 0; c < var_limit; ++c) {
            if (z[c] < -kEps) {
                pc = c;
                break;
            }
        }
        if (pc < 0) return false;
        int pr = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < rows; ++r) {
            const double coeff = at(r, pc);
            if (coeff > kEps) {
                const double ratio = at(r, cols - 1) / coeff;
                if (ratio < best - kEps || (ratio < best + kEps && (pr < 0 || basis[r] < basis[pr]))) {
                    best = ratio;
                    pr = r;
                }
            }
        }
        if (pr < 0) {
            z_value = -std::numeric_limits<double>::infinity();
            return false;  // unbounded
        }
        pivot(pr, pc);
        // update objective row
        const double f = z[pc];
        for (int c = 0; c < cols; ++c) {
            double delta = f * at(pr, c);
            if (c < static_cast<int>(z.size())) z[c] -= delta;
        }
        z_value -= f * at(pr, cols - 1);
        return true;
    }
};

}  // namespace

LinearProgram::Solution LinearProgram::solve() const {
    Solution sol;
    const int m = static_cast<int>(rows_.size());
    const int n = num_vars_;

    // column layout: [vars | slacks/surplus | artificials | rhs]
    int num_slack = 0;
    for (const Row& r : rows_) {
        if (r.rel != Relation::Equal) ++num_slack;
    }
    const int art_offset = n + num_slack;
    const int total = n + num_slack + m + 1;

    Tableau t;
    t.rows = m;
    t.cols = total;
    t.a.assign(static_cast<size_t>(m) * total, 0.0);
    t.basis.assign(m, -1);

    int slack_idx = 0;
    std::vector<int> art_for_row(m, -1);
    for (int r = 0; r < m; ++r) {
        const Row& row = rows_[r];
        double sign = row.rhs < 0.0 ? -1.0 : 1.0;  // normalize rhs >= 0
        for (const auto& [var, coeff] : row.coeffs) t.at(r, var) += sign * coeff;
        t.at(r, total - 1) = sign * row.rhs;
        Relation rel = row.rel;
        if (sign < 0.0) {
            if (rel == Relation::LessEq) rel = Relation::GreaterEq;
            else if (rel == Relation::GreaterEq) rel = Relation::LessEq;
        }
        if (rel == Relation::LessEq) {
            t.at(r, n + slack_idx) = 1.0;
            t.basis[r] = n + slack_idx;
            ++slack_idx;
        } else if (rel == Relation::GreaterEq) {
            t.at(r, n + slack_idx) = -1.0;
            ++slack_idx;
        }
        if (t.basis[r] < 0) {
            // needs an artificial basis column
            t.at(r, art_offset + r) = 1.0;
            t.basis[r] = art_offset + r;
            art_for_row[r] = art_offset + r;
        }
    }

    // phase 1: minimize the sum of artificials
    bool any_artificial = false;
    std::vector<double> z1(total - 1, 0.0);
    double z1_value = 0.0;
    for (int r = 0; r < m; ++r) {
        if (art_for_row[r] < 0) continue;
        any_artificial = true;
        for (int c = 0; c < total - 1; ++c) {
            if (c != art_for_row[r]) z1[c] -= t.at(r, c);
        }
        z1_value -= t.at(r, total - 1);
    }
    if (any_artificial) {
        while (t.iterate(z1, z1_value, total - 1)) {
        }
        if (z1_value < -1e-7) {
            sol.status = Solution::Status::Infeasible;
            return sol;
        }
        // drive any lingering artificial out of the basis
        for (int r = 0; r < m; ++r) {
            if (t.basis[r] < art_offset) continue;
            int replacement = -1;
            for (int c = 0; c < art_offset; ++c) {
                if (std::abs(t.at(r, c)) > kEps) {
                    replacement = c;
                    break;
                }
            }
            if (replacement >= 0) {
                t.pivot(r, replacement);
            }
        }
    }

    // phase 2: original objective expressed in the current basis
    std::vector<double> z2(total - 1, 0.0);
    double z2_value = 0.0;
    for (int v = 0; v < n; ++v) z2[v] = objective_[v];
    for (int r = 0; r < m; ++r) {
        const int b = t.basis[r];
        if (b < n && std::abs(objective_[b]) > 0.0) {
            const double f = objective_[b];
            for (int c = 0; c < total - 1; ++c) z2[c] -= f * t.at(r, c);
            z2_value -= f * t.at(r, total - 1);
        }
    }
    for (int c = art_offset; c < total - 1; ++c) z2[c] = std::numeric_limits<double>::infinity();
    while (t.iterate(z2, z2_value, art_offset)) {
    }
    if (z2_value == -std::numeric_limits<double>::infinity()) {
        sol.status = Solution::Status::Unbounded;
        return sol;
    }

    sol.status = Solution::Status::Optimal;
    sol.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < n) sol.x[t.basis[r]] = t.at(r, total - 1);
    }
    sol.objective = 0.0;
    for (int v = 0; v < n; ++v) sol.objective += objective_[v] * sol.x[v];
    return sol;
}

}  // namespace vfc
