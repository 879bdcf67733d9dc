#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::kernels {

// The baseline detection head emits this many boxes.
inline constexpr int kBoxEmbeddings = 12;

struct GiouResult {
    double value = 0.0;       // in (-1, 1]
    Eigen::Vector4d grad_a;   // d value / d (x_min, y_min, x_max, y_max)
    Eigen::Vector4d grad_b;
};

// Generalized IoU: IoU - (|C| - |union|) / |C| with C the minimal enclosing
// box. Two coincident zero-area boxes return 0 by convention.
GiouResult giou(const BBox& a, const BBox& b);

inline double giou_loss(const BBox& a, const BBox& b) {
    return 1.0 - giou(a, b).value;
}

// Center-form row (cx, cy, w, h) -> corner-form box.
BBox corner_from_center(const Eigen::Vector4d& cxcywh);

// Pairwise matching cost between M gt rows (cx,cy,w,h) and N predicted rows
// (cx,cy,w,h,score): cost[i][j] = -IoU(gt_i, pred_j) - score_j + L1(gt_i,
// pred_j) with L1 the mean absolute difference over the four coordinates.
// literal_sign = true restores +IoU as printed in the head's matching rule.
Eigen::MatrixXd matching_cost(const Eigen::MatrixXd& gt,
                              const Eigen::MatrixXd& pred,
                              bool literal_sign = false);

struct HeadLoss {
    double loss = 0.0;
    Eigen::MatrixXd grad;        // d loss / d pred, N x 5
    std::vector<int> assignment; // gt row i matched to pred row assignment[i]
};

// Loss of the selected boxes: sum over matches of giou_loss + L1, plus
// binary cross-entropy on every score (target 1 for matched rows, 0 for the
// rest). The assignment is the matching-cost optimum; gradients do not flow
// through it.
HeadLoss detection_head_loss(const Eigen::MatrixXd& gt,
                             const Eigen::MatrixXd& pred,
                             bool literal_sign = false);

// Same loss with a caller-fixed assignment (used to freeze the discrete part
// for finite-difference checks).
HeadLoss detection_head_loss_at(const Eigen::MatrixXd& gt,
                                const Eigen::MatrixXd& pred,
                                const std::vector<int>& assignment);

// BCE probability clamp: keeps the loss finite for scores at exactly 0 or 1.
inline constexpr double kBceEpsilon = 1e-7;

}  // namespace fbeval::kernels
