#pragma once

#include <string>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::det {

struct DetectionCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;

    DetectionCounts& operator+=(const DetectionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

enum class MatchingMode {
    // Predictions matched to unconsumed ground-truth boxes greedily in
    // descending IoU order, ties broken by (pred index, gt index). The
    // default: a stack of duplicate predictions on one object yields one TP
    // and the rest FP.
    OneToOne,
    // The competition appendix read literally: every prediction with
    // IoU > threshold against any gt box is a TP, FN counts gt boxes covered
    // by no prediction. Duplicates all count as TP here.
    Literal,
};

struct LabelEvalConfig {
    double iou_threshold = 0.5;  // match requires IoU strictly greater
    MatchingMode matching = MatchingMode::OneToOne;
};

// One (image, label) pair: all gt boxes for the label and all predicted ones.
// An absent object (negative query) is an empty gt list.
struct DetectionSample {
    std::string image_id;
    std::string label;
    std::vector<BBox> gt_boxes;
    std::vector<BBox> pred_boxes;
};

// Intersection over union. Zero-area boxes score 0 against everything,
// including an identical zero-area box.
double iou(const BBox& a, const BBox& b);

DetectionCounts match_label(const std::vector<BBox>& gt_boxes,
                            const std::vector<BBox>& pred_boxes,
                            const LabelEvalConfig& cfg = {});

// Micro-averaged F1: TP/FP/FN summed over every (image, label) pair first,
// precision/recall/F1 computed once from the totals. F1 = 0 when TP = 0.
ScoreReport f1_dataset(const std::vector<DetectionSample>& samples,
                       const LabelEvalConfig& cfg = {});

double f1_from_counts(const DetectionCounts& c);

}  // namespace fbeval::det
