#pragma once

#include <string>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::text {

// Idempotent string canonicalization applied to both sides before comparison.
// Canonical composition (NFC-style pair composition) always runs first, so
// decomposed Cyrillic like "и + breve" compares equal to precomposed "й".
struct NormalizationPolicy {
    bool lowercase = false;
    bool strip_punctuation = false;
    bool collapse_whitespace = false;
};

// String accuracy keeps case and punctuation: they are part of a
// transcription. VQA answers compare loosely.
inline NormalizationPolicy htr_policy() { return {false, false, true}; }
inline NormalizationPolicy vqa_policy() { return {true, true, true}; }

NormalizationPolicy parse_policy(const std::string& flags);

std::string normalize(const std::string& utf8, const NormalizationPolicy& policy);

// Canonical composition only (always part of normalize()).
std::string compose_canonical(const std::string& utf8);

// Proportion of samples whose normalized prediction equals the normalized
// transcription. A gt id with no prediction counts as wrong and bumps the
// report's warning counter.
ScoreReport htr_accuracy(
    const std::vector<std::pair<std::string, std::string>>& gt,
    const std::vector<std::pair<std::string, std::string>>& pred,
    const NormalizationPolicy& policy = htr_policy());

// Proportion of samples whose normalized prediction equals at least one of
// the gt answers. Every gt record must hold >= 1 answer.
ScoreReport vqa_accuracy(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& gt,
    const std::vector<std::pair<std::string, std::string>>& pred,
    const NormalizationPolicy& policy = vqa_policy());

}  // namespace fbeval::text
