#include "fbeval/harness/scoring.hpp"

#include <filesystem>
#include <unordered_map>

#include "fbeval/jsonl.hpp"

namespace fbeval::harness {

namespace {

ScoreReport score_c2c_impl(const std::string& gt_path,
                           const std::string& pred_path,
                           code::CodeBleuScore* breakdown) {
    auto gt = jsonl::load_c2c_gt(gt_path);
    auto pred = jsonl::load_c2c_pred(pred_path);
    std::unordered_map<std::string, const std::string*> by_id;
    for (const auto& p : pred) by_id.emplace(p.id, &p.python);

    ScoreReport report;
    report.task = TaskKind::C2C;
    report.sample_count = static_cast<int>(gt.size());
    code::CodeBleuScore mean;
    for (const auto& rec : gt) {
        code::CodeBleuScore s;
        auto it = by_id.find(rec.id);
        if (it == by_id.end()) {
            ++report.warnings;  // no prediction: pair scores 0
        } else {
            try {
                s = code::codebleu(*it->second, rec.python_refs,
                                   code::Language::Python);
            } catch (const code::LexError&) {
                ++report.warnings;  // unlexable prediction: pair scores 0
            }
        }
        mean.ngram += s.ngram;
        mean.weighted_ngram += s.weighted_ngram;
        mean.ast += s.ast;
        mean.dataflow += s.dataflow;
        mean.total += s.total;
        report.per_sample.emplace_back(rec.id, s.total);
    }
    if (gt.empty()) throw ValidationError(gt_path + ": empty ground truth");
    double n = static_cast<double>(gt.size());
    mean.ngram /= n;
    mean.weighted_ngram /= n;
    mean.ast /= n;
    mean.dataflow /= n;
    mean.total /= n;
    report.score = mean.total;
    if (breakdown) *breakdown = mean;
    return report;
}

ScoreReport score_htr_impl(const std::string& gt_path,
                           const std::string& pred_path,
                           const ScoreOptions& opts) {
    auto gt = jsonl::load_htr(gt_path);
    auto pred = jsonl::load_htr(pred_path);
    std::vector<std::pair<std::string, std::string>> gt_pairs, pred_pairs;
    for (auto& r : gt) gt_pairs.emplace_back(std::move(r.id), std::move(r.text));
    for (auto& r : pred) pred_pairs.emplace_back(std::move(r.id), std::move(r.text));
    return text::htr_accuracy(gt_pairs, pred_pairs,
                              opts.policy.value_or(text::htr_policy()));
}

ScoreReport score_vqa_impl(const std::string& gt_path,
                           const std::string& pred_path,
                           const ScoreOptions& opts) {
    auto gt = jsonl::load_vqa_gt(gt_path);
    auto pred = jsonl::load_vqa_pred(pred_path);
    std::vector<std::pair<std::string, std::vector<std::string>>> gt_pairs;
    std::vector<std::pair<std::string, std::string>> pred_pairs;
    for (auto& r : gt) gt_pairs.emplace_back(std::move(r.id), std::move(r.answers));
    for (auto& r : pred)
        pred_pairs.emplace_back(std::move(r.id), std::move(r.answer));
    return text::vqa_accuracy(gt_pairs, pred_pairs,
                              opts.policy.value_or(text::vqa_policy()));
}

ScoreReport score_zsod_impl(const std::string& gt_path,
                            const std::string& pred_path,
                            const ScoreOptions& opts) {
    auto gt = jsonl::load_zsod(gt_path, /*is_pred=*/false);
    auto pred = jsonl::load_zsod(pred_path, /*is_pred=*/true);

    // (image, label) -> predicted boxes
    std::unordered_map<std::string, std::vector<BBox>> pred_boxes;
    std::unordered_map<std::string, bool> consumed;
    for (const auto& img : pred)
        for (const auto& q : img.queries) {
            std::string key = img.image_id + "\x1f" + q.label;
            auto& bucket = pred_boxes[key];
            bucket.insert(bucket.end(), q.boxes.begin(), q.boxes.end());
            consumed[key] = false;
        }

    int warnings = 0;
    std::vector<det::DetectionSample> samples;
    for (const auto& img : gt)
        for (const auto& q : img.queries) {
            det::DetectionSample s;
            s.image_id = img.image_id;
            s.label = q.label;
            s.gt_boxes = q.boxes;
            std::string key = img.image_id + "\x1f" + q.label;
            auto it = pred_boxes.find(key);
            if (it != pred_boxes.end()) {
                s.pred_boxes = it->second;
                consumed[key] = true;
            } else {
                ++warnings;  // no prediction for a queried label: empty list
            }
            samples.push_back(std::move(s));
        }
    for (const auto& [key, used] : consumed)
        if (!used) ++warnings;  // prediction for a label never queried: ignored

    ScoreReport report = det::f1_dataset(samples, opts.detection);
    report.warnings += warnings;
    return report;
}

}  // namespace

ScoreReport score_task(TaskKind task, const std::string& gt_path,
                       const std::string& pred_path, const ScoreOptions& opts) {
    switch (task) {
        case TaskKind::C2C: return score_c2c_impl(gt_path, pred_path, nullptr);
        case TaskKind::HTR: return score_htr_impl(gt_path, pred_path, opts);
        case TaskKind::ZsOD: return score_zsod_impl(gt_path, pred_path, opts);
        case TaskKind::VQA: return score_vqa_impl(gt_path, pred_path, opts);
    }
    throw ValidationError("score_task: bad task");
}

std::pair<ScoreReport, code::CodeBleuScore> score_c2c(
    const std::string& gt_path, const std::string& pred_path) {
    code::CodeBleuScore breakdown;
    ScoreReport report = score_c2c_impl(gt_path, pred_path, &breakdown);
    return {report, breakdown};
}

OverallResult score_overall(const std::string& gt_dir,
                            const std::string& pred_dir,
                            const ScoreOptions& opts) {
    namespace fs = std::filesystem;
    OverallResult result;
    std::map<TaskKind, double> scores;
    for (TaskKind task : kAllTasks) {
        fs::path gt = fs::path(gt_dir) / (std::string(task_name(task)) + ".jsonl");
        fs::path pred =
            fs::path(pred_dir) / (std::string(task_name(task)) + ".jsonl");
        if (!fs::exists(gt) || !fs::exists(pred)) {
            result.score.missing.push_back(task);
            scores[task] = 0.0;
            continue;
        }
        ScoreReport report = score_task(task, gt.string(), pred.string(), opts);
        scores[task] = report.score;
        result.reports.emplace(task, std::move(report));
    }
    auto missing = std::move(result.score.missing);
    result.score = overall(scores[TaskKind::C2C], scores[TaskKind::HTR],
                           scores[TaskKind::ZsOD], scores[TaskKind::VQA]);
    result.score.missing = std::move(missing);
    return result;
}

}  // namespace fbeval::harness
