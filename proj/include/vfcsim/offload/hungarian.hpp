#pragma once

#include <limits>
#include <vector>

namespace vfc {

constexpr double kInfeasibleCost = std::numeric_limits<double>::infinity();

struct HungarianResult {
    std::vector<int> row_to_col;  // column per row, always a perfect matching
    double total_cost = 0.0;      // sum over finite matched entries
    std::vector<bool> matched_infeasible;  // row matched only through an infinite entry
};

/// Kuhn-Munkres assignment on a square cost matrix (potentials form, O(n^3)).
/// Entries may be +infinity; such cells are internally replaced by a large
/// finite sentinel so an all-infinite row still matches ("to a dummy") instead
/// of failing. Deterministic: rows are processed in index order and column
/// scans break ties toward lower indices.
HungarianResult hungarian_solve(const std::vector<std::vector<double>>& cost);

/// Pads a rectangular matrix with dummy rows/columns of the given cost and
/// solves. Rows matched to padding columns are reported as -1.
struct PaddedAssignment {
    std::vector<int> row_to_col;  // real column index or -1 (dummy/infeasible)
    double total_cost = 0.0;      // finite matched entries only
};
PaddedAssignment hungarian_assign(const std::vector<std::vector<double>>& cost, double dummy_cost);

}  // namespace vfc
