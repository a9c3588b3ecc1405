// Exact linear assignment via shortest augmenting paths (Jonker-Volgenant
// style, O(n^3)). Used for the optimal one-to-one entity alignment in CEAFe.
#pragma once

#include <limits>
#include <vector>

namespace coref {

// Minimizes total cost over a square matrix; returns row -> column.
inline std::vector<int> solve_assignment_min(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = match[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

// Maximum total weight over a (possibly rectangular) similarity matrix.
// Returns the achieved total; `pairs` receives (row, col) of matched cells
// with positive weight.
inline double max_weight_assignment(const std::vector<std::vector<double>>& weight,
                                    std::vector<std::pair<int, int>>* pairs = nullptr) {
    const int rows = static_cast<int>(weight.size());
    const int cols = rows ? static_cast<int>(weight[0].size()) : 0;
    const int n = std::max(rows, cols);
    if (n == 0) return 0.0;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) cost[r][c] = -weight[r][c];
    std::vector<int> row_to_col = solve_assignment_min(cost);
    double total = 0.0;
    for (int r = 0; r < rows; ++r) {
        int c = row_to_col[r];
        if (c >= 0 && c < cols && weight[r][c] > 0.0) {
            total += weight[r][c];
            if (pairs) pairs->emplace_back(r, c);
        }
    }
    return total;
}

}  // namespace coref
