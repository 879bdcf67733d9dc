#include "fbeval/kernels/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbeval/kernels/assignment.hpp"

namespace fbeval::kernels {

namespace {

// Partial derivatives of min(a, b): ties go to the first argument.
inline void d_min(double a, double b, double& da, double& db) {
    da = (a <= b) ? 1.0 : 0.0;
    db = 1.0 - da;
}
inline void d_max(double a, double b, double& da, double& db) {
    da = (a >= b) ? 1.0 : 0.0;
    db = 1.0 - da;
}

}  // namespace

GiouResult giou(const BBox& a, const BBox& b) {
    GiouResult r;
    r.grad_a.setZero();
    r.grad_b.setZero();

    const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    const bool overlap = iw > 0 && ih > 0;
    const double inter = overlap ? iw * ih : 0.0;

    const double area_a = a.area();
    const double area_b = b.area();
    const double uni = area_a + area_b - inter;

    const double cw = std::max(a.x_max, b.x_max) - std::min(a.x_min, b.x_min);
    const double ch = std::max(a.y_max, b.y_max) - std::min(a.y_min, b.y_min);
    const double enclose = cw * ch;

    if (enclose <= 0.0) return r;  // both boxes collapsed onto one point

    const double iou_term = uni > 0.0 ? inter / uni : 0.0;
    r.value = iou_term - (enclose - uni) / enclose;

    // Assemble d value / d coord from the partials of inter, union, enclose.
    // Layout per box: 0:x_min 1:y_min 2:x_max 3:y_max.
    Eigen::Vector4d di_a = Eigen::Vector4d::Zero(), di_b = Eigen::Vector4d::Zero();
    if (overlap) {
        double da, db;
        d_min(a.x_max, b.x_max, da, db);
        di_a(2) += da * ih;
        di_b(2) += db * ih;
        d_max(a.x_min, b.x_min, da, db);
        di_a(0) -= da * ih;
        di_b(0) -= db * ih;
        d_min(a.y_max, b.y_max, da, db);
        di_a(3) += da * iw;
        di_b(3) += db * iw;
        d_max(a.y_min, b.y_min, da, db);
        di_a(1) -= da * iw;
        di_b(1) -= db * iw;
    }

    Eigen::Vector4d dA_a;
    dA_a << -(a.y_max - a.y_min), -(a.x_max - a.x_min), (a.y_max - a.y_min),
        (a.x_max - a.x_min);
    Eigen::Vector4d dB_b;
    dB_b << -(b.y_max - b.y_min), -(b.x_max - b.x_min), (b.y_max - b.y_min),
        (b.x_max - b.x_min);

    Eigen::Vector4d du_a = dA_a - di_a;
    Eigen::Vector4d du_b = dB_b - di_b;

    Eigen::Vector4d dc_a = Eigen::Vector4d::Zero(), dc_b = Eigen::Vector4d::Zero();
    {
        double da, db;
        d_max(a.x_max, b.x_max, da, db);
        dc_a(2) += da * ch;
        dc_b(2) += db * ch;
        d_min(a.x_min, b.x_min, da, db);
        dc_a(0) -= da * ch;
        dc_b(0) -= db * ch;
        d_max(a.y_max, b.y_max, da, db);
        dc_a(3) += da * cw;
        dc_b(3) += db * cw;
        d_min(a.y_min, b.y_min, da, db);
        dc_a(1) -= da * cw;
        dc_b(1) -= db * cw;
    }

    // GIoU = I/U - 1 + U/C
    const double inv_u = uni > 0.0 ? 1.0 / uni : 0.0;
    const double inv_c = 1.0 / enclose;
    r.grad_a = di_a * inv_u - du_a * (inter * inv_u * inv_u) + du_a * inv_c -
               dc_a * (uni * inv_c * inv_c);
    r.grad_b = di_b * inv_u - du_b * (inter * inv_u * inv_u) + du_b * inv_c -
               dc_b * (uni * inv_c * inv_c);
    return r;
}

BBox corner_from_center(const Eigen::Vector4d& v) {
    return BBox{v(0) - v(2) / 2, v(1) - v(3) / 2, v(0) + v(2) / 2,
                v(1) + v(3) / 2};
}

namespace {

double iou_center(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    BBox ca = corner_from_center(a), cb = corner_from_center(b);
    double iw = std::min(ca.x_max, cb.x_max) - std::max(ca.x_min, cb.x_min);
    double ih = std::min(ca.y_max, cb.y_max) - std::max(ca.y_min, cb.y_min);
    double inter = (iw > 0 && ih > 0) ? iw * ih : 0.0;
    double uni = ca.area() + cb.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

double l1_mean(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    return (a - b).cwiseAbs().mean();
}

// Chain rule for center-form coordinates: maps a corner-form gradient
// (x_min, y_min, x_max, y_max) back to (cx, cy, w, h).
Eigen::Vector4d center_grad_from_corner(const Eigen::Vector4d& g) {
    Eigen::Vector4d out;
    out << g(0) + g(2), g(1) + g(3), 0.5 * (g(2) - g(0)), 0.5 * (g(3) - g(1));
    return out;
}

}  // namespace

Eigen::MatrixXd matching_cost(const Eigen::MatrixXd& gt,
                              const Eigen::MatrixXd& pred, bool literal_sign) {
    if (gt.cols() != 4) throw std::invalid_argument("matching_cost: gt must be Mx4");
    if (pred.cols() != 5)
        throw std::invalid_argument("matching_cost: pred must be Nx5");
    if (gt.rows() > pred.rows())
        throw std::invalid_argument("matching_cost: more gt boxes than predictions");

    const double iou_sign = literal_sign ? 1.0 : -1.0;
    Eigen::MatrixXd cost(gt.rows(), pred.rows());
    for (Eigen::Index i = 0; i < gt.rows(); ++i) {
        Eigen::Vector4d g = gt.row(i).transpose();
        for (Eigen::Index j = 0; j < pred.rows(); ++j) {
            Eigen::Vector4d p = pred.row(j).head<4>().transpose();
            cost(i, j) = iou_sign * iou_center(g, p) - pred(j, 4) + l1_mean(g, p);
        }
    }
    return cost;
}

HeadLoss detection_head_loss_at(const Eigen::MatrixXd& gt,
                                const Eigen::MatrixXd& pred,
                                const std::vector<int>& assignment) {
    if (static_cast<Eigen::Index>(assignment.size()) != gt.rows())
        throw std::invalid_argument("detection_head_loss: bad assignment size");

    HeadLoss out;
    out.assignment = assignment;
    out.grad = Eigen::MatrixXd::Zero(pred.rows(), 5);

    std::vector<bool> matched(static_cast<std::size_t>(pred.rows()), false);
    for (Eigen::Index i = 0; i < gt.rows(); ++i) {
        int j = assignment[static_cast<std::size_t>(i)];
        matched[static_cast<std::size_t>(j)] = true;

        Eigen::Vector4d g = gt.row(i).transpose();
        Eigen::Vector4d p = pred.row(j).head<4>().transpose();
        GiouResult gi = giou(corner_from_center(g), corner_from_center(p));
        out.loss += (1.0 - gi.value) + l1_mean(g, p);

        Eigen::Vector4d grad_coords = -center_grad_from_corner(gi.grad_b);
        for (int k = 0; k < 4; ++k) {
            double d = p(k) - g(k);
            grad_coords(k) += (d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0)) / 4.0;
        }
        out.grad.row(j).head<4>() += grad_coords.transpose();
    }

    for (Eigen::Index j = 0; j < pred.rows(); ++j) {
        double y = matched[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
        double p = pred(j, 4);
        double pc = std::clamp(p, kBceEpsilon, 1.0 - kBceEpsilon);
        out.loss += -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
        if (p > kBceEpsilon && p < 1.0 - kBceEpsilon)
            out.grad(j, 4) = (pc - y) / (pc * (1.0 - pc));
    }
    return out;
}

HeadLoss detection_head_loss(const Eigen::MatrixXd& gt,
                             const Eigen::MatrixXd& pred, bool literal_sign) {
    std::vector<int> a = assign(matching_cost(gt, pred, literal_sign));
    return detection_head_loss_at(gt, pred, a);
}

}  // namespace fbeval::kernels
