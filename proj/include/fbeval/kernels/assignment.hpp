#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fbeval::kernels {

// Minimum-cost injection of rows into columns for a rectangular cost matrix
// (rows <= cols), Kuhn-Munkres with potentials. Exact optimum, O(R^2 C).
// Throws std::invalid_argument on non-finite costs or rows > cols.
std::vector<int> assign(const Eigen::MatrixXd& cost);

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& a);

}  // namespace fbeval::kernels
