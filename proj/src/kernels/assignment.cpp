#include "fbeval/kernels/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbeval::kernels {

std::vector<int> assign(const Eigen::MatrixXd& cost) {
    const int rows = static_cast<int>(cost.rows());
    const int cols = static_cast<int>(cost.cols());
    if (rows > cols)
        throw std::invalid_argument("assign: more rows than columns");
    if (!cost.allFinite())
        throw std::invalid_argument("assign: non-finite cost entry");
    if (rows == 0) return {};

    const double inf = std::numeric_limits<double>::infinity();

    // Potentials u (rows), v (cols); way[j] backtracks the augmenting path.
    // 1-based with a virtual row/col 0, the classic formulation.
    std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
    std::vector<int> match(cols + 1, 0);  // match[j] = row matched to col j
    std::vector<int> way(cols + 1, 0);

    for (int i = 1; i <= rows; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(cols + 1, inf);
        std::vector<bool> used(cols + 1, false);
        do {
            used[j0] = true;
            int i0 = match[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= cols; ++j) {
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
        } while (j0 != 0);
    }

    std::vector<int> result(rows, -1);
    for (int j = 1; j <= cols; ++j)
        if (match[j] != 0) result[match[j] - 1] = j - 1;
    return result;
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& a) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += cost(static_cast<Eigen::Index>(i), a[i]);
    return total;
}

}  // namespace fbeval::kernels
