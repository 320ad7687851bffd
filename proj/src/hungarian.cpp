#include "vfcsim/offload/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vfc {

HungarianResult hungarian_solve(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("cost matrix must be square");
    }
    HungarianResult result;
    result.row_to_col.assign(n, -1);
    result.matched_infeasible.assign(n, false);
    if (n == 0) return result;

    // replace infinities with a sentinel strictly dominating any finite matching
    double max_finite = 0.0;
    for (const auto& row : cost) {
        for (double v : row) {
            if (std::isfinite(v)) max_finite = std::max(max_finite, std::abs(v));
        }
    }
    const double big = (max_finite + 1.0) * (n + 1);
    auto at = [&](int r, int c) {
        const double v = cost[r][c];
        return std::isfinite(v) ? v : big;
    };

    // shortest augmenting paths with dual potentials (1-based internals)
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0);  // column -> row
    std::vector<int> way(n + 1, 0);
    for (int r = 1; r <= n; ++r) {
        match[0] = r;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    for (int j = 1; j <= n; ++j) {
        if (match[j] == 0) continue;
        const int r = match[j] - 1;
        result.row_to_col[r] = j - 1;
        if (std::isfinite(cost[r][j - 1])) {
            result.total_cost += cost[r][j - 1];
        } else {
            result.matched_infeasible[r] = true;
        }
    }
    return result;
}

PaddedAssignment hungarian_assign(const std::vector<std::vector<double>>& cost, double dummy_cost) {
    const int rows = static_cast<int>(cost.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(cost[0].size());
    const int n = std::max(rows, cols);
    PaddedAssignment out;
    out.row_to_col.assign(rows, -1);
    if (n == 0) return out;

    std::vector<std::vector<double>> padded(n, std::vector<double>(n, 0.0));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (r < rows && c < cols) {
                padded[r][c] = cost[r][c];
            } else if (r < rows) {
                padded[r][c] = dummy_cost;  // dummy column: row left unassigned
            } else {
                padded[r][c] = 0.0;  // dummy row: column left unused
            }
        }
    }
    const HungarianResult res = hungarian_solve(padded);
    for (int r = 0; r < rows; ++r) {
        const int c = res.row_to_col[r];
        if (c >= 0 && c < cols && !res.matched_infeasible[r]) {
            out.row_to_col[r] = c;
            out.total_cost += cost[r][c];
        }
    }
    return out;
}

}  // namespace vfc
