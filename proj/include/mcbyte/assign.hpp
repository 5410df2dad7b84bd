#pragma once

#include <utility>
#include <vector>

#include "mcbyte/grid.hpp"

namespace mcbyte {

struct Assignment {
    std::vector<std::pair<int, int>> matches;  // (row, col), sorted by row
    std::vector<int> unmatched_rows;
    std::vector<int> unmatched_cols;

    double total_cost(const Grid<double>& costs) const;
};

// Min-cost bipartite matching with per-pair gating: entries with cost > gate
// can never be matched. Among gated-feasible matchings the solver maximizes
// the number of matches first, then minimizes total cost. Costs may be
// negative; every entry must be finite. Deterministic for identical input.
Assignment solve_assignment(const Grid<double>& costs, double gate);

}  // namespace mcbyte
