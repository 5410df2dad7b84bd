#include "mcbyte/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcbyte {

double Assignment::total_cost(const Grid<double>& costs) const {
    double total = 0.0;
    for (const auto& [r, c] : matches) {
        total += costs.at(r, c);
    }
    return total;
}

namespace {

// Shortest-augmenting-path assignment on a rows x cols matrix, rows <= cols.
// Column scan order is ascending and improvements are strict, so equal-cost
// alternatives resolve to the lowest indices; the result is deterministic.
std::vector<int> solve_rect(const Grid<double>& a) {
    const int n = a.rows();
    const int m = a.cols();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = kInf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = a.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_of_col(m, -1);
    for (int j = 1; j <= m; ++j) {
        if (p[j] != 0) {
            row_of_col[j - 1] = p[j] - 1;
        }
    }
    return row_of_col;
}

}  // namespace

Assignment solve_assignment(const Grid<double>& costs, double gate) {
    const int n = costs.rows();
    const int m = costs.cols();
    Assignment out;
    if (n == 0 || m == 0) {
        for (int i = 0; i < n; ++i) out.unmatched_rows.push_back(i);
        for (int j = 0; j < m; ++j) out.unmatched_cols.push_back(j);
        return out;
    }

    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double c = costs.at(i, j);
            if (!std::isfinite(c)) {
                throw std::invalid_argument("assignment cost matrix has a non-finite entry");
            }
            if (c <= gate) {
                max_abs = std::max(max_abs, std::abs(c));
            }
        }
    }
    // Sentinel for gated-out pairs: large enough that using one more sentinel
    // can never beat any rearrangement of real costs, small enough to keep
    // double arithmetic on real-cost differences exact in practice.
    const int k = std::min(n, m);
    const double big = 2.0 * k * (max_abs + 1.0) + 1.0;

    const bool transposed = n > m;
    const int rows = transposed ? m : n;
    const int cols = transposed ? n : m;
    Grid<double> work(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double c = transposed ? costs.at(j, i) : costs.at(i, j);
            work.at(i, j) = (c <= gate) ? c : big;
        }
    }

    const std::vector<int> row_of_col = solve_rect(work);

    std::vector<char> row_matched(n, 0), col_matched(m, 0);
    for (int wc = 0; wc < cols; ++wc) {
        const int wr = row_of_col[wc];
        if (wr < 0 || work.at(wr, wc) >= big) {
            continue;  // unmatched column or sentinel pair
        }
        const int r = transposed ? wc : wr;
        const int c = transposed ? wr : wc;
        out.matches.emplace_back(r, c);
        row_matched[r] = 1;
        col_matched[c] = 1;
    }
    std::sort(out.matches.begin(), out.matches.end());
    for (int i = 0; i < n; ++i) {
        if (!row_matched[i]) out.unmatched_rows.push_back(i);
    }
    for (int j = 0; j < m; ++j) {
        if (!col_matched[j]) out.unmatched_cols.push_back(j);
    }
    return out;
}

}  // namespace mcbyte
