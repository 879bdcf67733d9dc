#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fbeval::kernels {

struct CtcResult {
    double loss = 0.0;
    Eigen::MatrixXd grad;  // d loss / d log_probs, T x V
};

// CTC negative log-likelihood by the forward-backward recursion in log space,
// with the exact analytic gradient w.r.t. the log-probability entries
// (treated as free variables, so finite-difference checks apply directly).
//
// log_probs is T x V, labels must not contain the blank symbol, and T must
// admit at least one alignment: T >= |labels| + #adjacent-repeats.
CtcResult ctc_loss(const Eigen::MatrixXd& log_probs,
                   const std::vector<int>& labels, int blank = 0);

// Per-timestep argmax, collapse adjacent repeats, drop blanks.
std::vector<int> ctc_greedy_decode(const Eigen::MatrixXd& log_probs,
                                   int blank = 0);

// LogProbMatrix invariant: every row log-sum-exps to 0 within tol.
bool rows_are_normalized(const Eigen::MatrixXd& log_probs, double tol = 1e-6);

}  // namespace fbeval::kernels
