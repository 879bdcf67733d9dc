#include <doctest.h>

#include <random>

#include "fbeval/detection.hpp"
#include "fbeval/kernels/assignment.hpp"
#include "fbeval/kernels/boxes.hpp"
#include "oracles.hpp"

using namespace fbeval;
using namespace fbeval::kernels;

namespace {

BBox random_box(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0, 10);
    double x1 = unif(rng), x2 = unif(rng), y1 = unif(rng), y2 = unif(rng);
    return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2),
            std::max(y1, y2)};
}

Eigen::Vector4d random_center_box(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    std::uniform_real_distribution<double> size(0.05, 0.4);
    return {unif(rng), unif(rng), size(rng), size(rng)};
}

}  // namespace

TEST_CASE("giou fixtures") {
    BBox unit{0, 0, 1, 1};
    CHECK(giou(unit, unit).value == doctest::Approx(1.0));
    // disjoint: IoU 0, enclosing area 3, union 2 -> -(3-2)/3
    CHECK(giou(unit, BBox{2, 0, 3, 1}).value == doctest::Approx(-1.0 / 3.0));
    // coincident zero-area boxes: 0 by convention
    BBox point{1, 1, 1, 1};
    CHECK(giou(point, point).value == 0.0);
}

TEST_CASE("giou bounds and relation to iou on random pairs") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 10000; ++i) {
        BBox a = random_box(rng), b = random_box(rng);
        double g = giou(a, b).value;
        double i_over_u = det::iou(a, b);
        CHECK(g <= i_over_u + 1e-12);
        CHECK(g > -1.0);
        CHECK(g <= 1.0);
    }
}

TEST_CASE("giou equals iou when the union fills the enclosing box") {
    BBox a{0, 0, 2, 2}, b{1, 0, 2, 2};  // b inside a's column span
    CHECK(giou(a, b).value == doctest::Approx(det::iou(a, b)));
}

TEST_CASE("giou gradients match finite differences") {
    std::mt19937_64 rng(73);
    int checked = 0;
    while (checked < 50) {
        BBox a = random_box(rng), b = random_box(rng);
        if (a.area() < 1e-3 || b.area() < 1e-3) continue;
        GiouResult r = giou(a, b);
        auto part = [&](BBox& box, int coord) -> double& {
            switch (coord) {
                case 0: return box.x_min;
                case 1: return box.y_min;
                case 2: return box.x_max;
                default: return box.y_max;
            }
        };
        for (int coord = 0; coord < 4; ++coord) {
            double numeric_a = oracles::central_difference(
                [&](double x) {
                    BBox pa = a;
                    part(pa, coord) = x;
                    return giou(pa, b).value;
                },
                part(a, coord));
            double numeric_b = oracles::central_difference(
                [&](double x) {
                    BBox pb = b;
                    part(pb, coord) = x;
                    return giou(a, pb).value;
                },
                part(b, coord));
            CHECK(oracles::gradient_close(r.grad_a(coord), numeric_a, 1e-4));
            CHECK(oracles::gradient_close(r.grad_b(coord), numeric_b, 1e-4));
        }
        ++checked;
    }
}

TEST_CASE("matching cost fixtures") {
    SUBCASE("perfect prediction with full score is the row minimum at -2") {
        Eigen::MatrixXd gt(1, 4);
        gt << 0.5, 0.5, 0.2, 0.2;
        Eigen::MatrixXd pred(2, 5);
        pred << 0.5, 0.5, 0.2, 0.2, 1.0,  // exact, score 1
                0.9, 0.9, 0.1, 0.1, 0.0;  // far, score 0
        Eigen::MatrixXd cost = matching_cost(gt, pred);
        CHECK(cost(0, 0) == doctest::Approx(-2.0));
        CHECK(cost(0, 0) < cost(0, 1));
    }
    SUBCASE("disjoint boxes with zero score cost their mean L1") {
        Eigen::MatrixXd gt(1, 4);
        gt << 0.2, 0.2, 0.1, 0.1;
        Eigen::MatrixXd pred(1, 5);
        pred << 0.8, 0.8, 0.1, 0.1, 0.0;
        double l1 = (0.6 + 0.6 + 0.0 + 0.0) / 4.0;
        CHECK(matching_cost(gt, pred)(0, 0) == doctest::Approx(l1));
    }
    SUBCASE("literal sign flips the iou term") {
        Eigen::MatrixXd gt(1, 4);
        gt << 0.5, 0.5, 0.2, 0.2;
        Eigen::MatrixXd pred(1, 5);
        pred << 0.5, 0.5, 0.2, 0.2, 0.0;
        CHECK(matching_cost(gt, pred, false)(0, 0) == doctest::Approx(-1.0));
        CHECK(matching_cost(gt, pred, true)(0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("more gt than predictions is an error") {
        CHECK_THROWS_AS(
            matching_cost(Eigen::MatrixXd::Zero(3, 4), Eigen::MatrixXd::Zero(2, 5)),
            std::invalid_argument);
    }
}

TEST_CASE("matching cost equals an independent evaluator on random instances") {
    std::mt19937_64 rng(79);
    for (int it = 0; it < 100; ++it) {
        int m = 1 + static_cast<int>(rng() % 3);
        int n = m + static_cast<int>(rng() % 3);
        Eigen::MatrixXd gt(m, 4), pred(n, 5);
        for (int i = 0; i < m; ++i) gt.row(i) = random_center_box(rng).transpose();
        for (int j = 0; j < n; ++j) {
            pred.row(j).head<4>() = random_center_box(rng).transpose();
            pred(j, 4) = std::uniform_real_distribution<double>(0, 1)(rng);
        }
        Eigen::MatrixXd cost = matching_cost(gt, pred);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                // independent evaluation on corner-form boxes
                Eigen::Vector4d g = gt.row(i).transpose();
                Eigen::Vector4d p = pred.row(j).head<4>().transpose();
                BBox gb{g(0) - g(2) / 2, g(1) - g(3) / 2, g(0) + g(2) / 2,
                        g(1) + g(3) / 2};
                BBox pb{p(0) - p(2) / 2, p(1) - p(3) / 2, p(0) + p(2) / 2,
                        p(1) + p(3) / 2};
                double l1 = (std::abs(g(0) - p(0)) + std::abs(g(1) - p(1)) +
                             std::abs(g(2) - p(2)) + std::abs(g(3) - p(3))) /
                            4.0;
                double expected = -det::iou(gb, pb) - pred(j, 4) + l1;
                CHECK(cost(i, j) == doctest::Approx(expected).epsilon(1e-12));
            }
    }
}

TEST_CASE("head loss vanishes for perfect predictions up to bce clamping") {
    Eigen::MatrixXd gt(2, 4);
    gt << 0.3, 0.3, 0.2, 0.2, 0.7, 0.7, 0.1, 0.1;
    Eigen::MatrixXd pred = Eigen::MatrixXd::Zero(kBoxEmbeddings, 5);
    pred.row(0) << 0.3, 0.3, 0.2, 0.2, 1.0;
    pred.row(1) << 0.7, 0.7, 0.1, 0.1, 1.0;
    for (int j = 2; j < kBoxEmbeddings; ++j) pred.row(j) << 0.1, 0.1, 0.0, 0.0, 0.0;
    HeadLoss hl = detection_head_loss(gt, pred);
    CHECK(hl.assignment == std::vector<int>{0, 1});
    CHECK(hl.loss < 1e-5);  // only the clamped-BCE epsilon remains
}

TEST_CASE("head loss grows monotonically with a coordinate perturbation") {
    Eigen::MatrixXd gt(1, 4);
    gt << 0.5, 0.5, 0.3, 0.3;
    double prev = -1;
    for (double eps : {0.0, 0.01, 0.02, 0.04, 0.08}) {
        Eigen::MatrixXd pred(1, 5);
        pred << 0.5 + eps, 0.5, 0.3, 0.3, 0.9;
        double loss = detection_head_loss(gt, pred).loss;
        CHECK(loss > prev);
        prev = loss;
    }
}

TEST_CASE("head loss gradient matches finite differences with frozen assignment") {
    std::mt19937_64 rng(83);
    for (int it = 0; it < 10; ++it) {
        int m = 1 + static_cast<int>(rng() % 3);
        int n = m + 1 + static_cast<int>(rng() % 3);
        Eigen::MatrixXd gt(m, 4), pred(n, 5);
        for (int i = 0; i < m; ++i) gt.row(i) = random_center_box(rng).transpose();
        for (int j = 0; j < n; ++j) {
            pred.row(j).head<4>() = random_center_box(rng).transpose();
            pred(j, 4) = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        }
        std::vector<int> frozen = assign(matching_cost(gt, pred));
        HeadLoss hl = detection_head_loss_at(gt, pred, frozen);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < 5; ++k) {
                double numeric = oracles::central_difference(
                    [&](double x) {
                        Eigen::MatrixXd p = pred;
                        p(j, k) = x;
                        return detection_head_loss_at(gt, p, frozen).loss;
                    },
                    pred(j, k));
                CHECK(oracles::gradient_close(hl.grad(j, k), numeric, 1e-4));
            }
    }
}

TEST_CASE("bce clamp keeps the loss finite at score extremes") {
    Eigen::MatrixXd gt(1, 4);
    gt << 0.5, 0.5, 0.2, 0.2;
    Eigen::MatrixXd pred(2, 5);
    pred << 0.5, 0.5, 0.2, 0.2, 0.0,   // matched but score 0
            0.1, 0.1, 0.1, 0.1, 1.0;   // unmatched but score 1
    double loss = detection_head_loss(gt, pred).loss;
    CHECK(std::isfinite(loss));
    CHECK(loss > 0);
}
