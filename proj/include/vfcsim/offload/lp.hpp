#pragma once

#include <utility>
#include <vector>

namespace vfc {

/// Minimal dense LP (minimize c.x subject to row constraints, x >= 0) solved
/// with a two-phase tableau simplex under Bland's rule, so pivoting is
/// deterministic and cycle-free. Intended for the small per-window slot
/// allocation subproblems (hundreds of variables at most).
class LinearProgram {
public:
    enum class Relation { LessEq, GreaterEq, Equal };

    explicit LinearProgram(int num_vars) : num_vars_(num_vars), objective_(num_vars, 0.0) {}

    void set_objective(int var, double coeff) { objective_[var] = coeff; }

    void add_constraint(std::vector<std::pair<int, double>> coeffs, Relation rel, double rhs) {
        rows_.push_back({std::move(coeffs), rel, rhs});
    }

    int num_vars() const { return num_vars_; }

    struct Solution {
        enum class Status { Optimal, Infeasible, Unbounded };
        Status status = Status::Infeasible;
        std::vector<double> x;
        double objective = 0.0;
        bool optimal() const { return status == Status::Optimal; }
    };

    Solution solve() const;

private:
    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        Relation rel;
        double rhs;
    };

    int num_vars_;
    std::vector<double> objective_;
    std::vector<Row> rows_;
};

}  // namespace vfc
