#include "fbeval/detection.hpp"

#include <algorithm>
#include <tuple>

namespace fbeval::det {

double iou(const BBox& a, const BBox& b) {
    double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    double inter = (iw > 0 && ih > 0) ? iw * ih : 0.0;
    double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

namespace {

DetectionCounts match_one_to_one(const std::vector<BBox>& gt,
                                 const std::vector<BBox>& pred, double thr) {
    struct Cand {
        double iou;
        std::size_t pred_idx;
        std::size_t gt_idx;
    };
    std::vector<Cand> cands;
    for (std::size_t p = 0; p < pred.size(); ++p)
        for (std::size_t g = 0; g < gt.size(); ++g) {
            double v = iou(pred[p], gt[g]);
            if (v > thr) cands.push_back({v, p, g});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(b.iou, a.pred_idx, a.gt_idx) <
               std::tie(a.iou, b.pred_idx, b.gt_idx);
    });

    std::vector<bool> pred_used(pred.size(), false), gt_used(gt.size(), false);
    long tp = 0;
    for (const Cand& c : cands) {
        if (pred_used[c.pred_idx] || gt_used[c.gt_idx]) continue;
        pred_used[c.pred_idx] = true;
        gt_used[c.gt_idx] = true;
        ++tp;
    }
    DetectionCounts counts;
    counts.tp = tp;
    counts.fp = static_cast<long>(pred.size()) - tp;
    counts.fn = static_cast<long>(gt.size()) - tp;
    return counts;
}

DetectionCounts match_literal(const std::vector<BBox>& gt,
                              const std::vector<BBox>& pred, double thr) {
    DetectionCounts counts;
    std::vector<bool> covered(gt.size(), false);
    for (const BBox& p : pred) {
        bool hit = false;
        for (std::size_t g = 0; g < gt.size(); ++g) {
            if (iou(p, gt[g]) > thr) {
                hit = true;
                covered[g] = true;
            }
        }
        hit ? ++counts.tp : ++counts.fp;
    }
    for (bool c : covered)
        if (!c) ++counts.fn;
    return counts;
}

}  // namespace

DetectionCounts match_label(const std::vector<BBox>& gt_boxes,
                            const std::vector<BBox>& pred_boxes,
                            const LabelEvalConfig& cfg) {
    if (cfg.matching == MatchingMode::OneToOne)
        return match_one_to_one(gt_boxes, pred_boxes, cfg.iou_threshold);
    return match_literal(gt_boxes, pred_boxes, cfg.iou_threshold);
}

double f1_from_counts(const DetectionCounts& c) {
    if (c.tp == 0) return 0.0;
    double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    return 2.0 * recall * precision / (recall + precision);
}

ScoreReport f1_dataset(const std::vector<DetectionSample>& samples,
                       const LabelEvalConfig& cfg) {
    if (samples.empty())
        throw ValidationError("f1_dataset: empty dataset");
    DetectionCounts total;
    ScoreReport report;
    report.task = TaskKind::ZsOD;
    report.sample_count = static_cast<int>(samples.size());
    for (const DetectionSample& s : samples) {
        DetectionCounts c = match_label(s.gt_boxes, s.pred_boxes, cfg);
        total += c;
        report.per_sample.emplace_back(s.image_id + "/" + s.label,
                                       f1_from_counts(c));
    }
    report.score = f1_from_counts(total);
    return report;
}

}  // namespace fbeval::det
