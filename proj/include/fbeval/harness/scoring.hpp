#pragma once

#include <map>
#include <optional>
#include <string>

#include "fbeval/code/codebleu.hpp"
#include "fbeval/detection.hpp"
#include "fbeval/text.hpp"
#include "fbeval/types.hpp"

namespace fbeval::harness {

struct ScoreOptions {
    det::LabelEvalConfig detection;
    std::optional<text::NormalizationPolicy> policy;  // overrides the task default
};

// Dispatches to the task's metric. Validation errors carry file/line context;
// a prediction-side lexing failure in C2C scores that pair 0 with a warning
// instead of failing the run.
ScoreReport score_task(TaskKind task, const std::string& gt_path,
                       const std::string& pred_path,
                       const ScoreOptions& opts = {});

// C2C with the component breakdown kept.
std::pair<ScoreReport, code::CodeBleuScore> score_c2c(
    const std::string& gt_path, const std::string& pred_path);

struct OverallResult {
    OverallScore score;
    std::map<TaskKind, ScoreReport> reports;
};

// Scores <dir>/{c2c,htr,zsod,vqa}.jsonl pairs; a task with either file
// absent contributes 0 and is flagged in score.missing.
OverallResult score_overall(const std::string& gt_dir,
                            const std::string& pred_dir,
                            const ScoreOptions& opts = {});

}  // namespace fbeval::harness
