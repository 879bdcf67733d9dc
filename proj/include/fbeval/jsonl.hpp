#pragma once

#include <string>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::jsonl {

// One JSON object per line, UTF-8. Boxes travel in corner form
// [x1, y1, x2, y2]; predictions may append a confidence as a 5th element.

struct C2cGtRecord {
    std::string id;
    std::string java;
    std::vector<std::string> python_refs;  // >= 1
};
struct C2cPredRecord {
    std::string id;
    std::string python;
};
struct TextRecord {  // HTR gt and pred share the shape
    std::string id;
    std::string text;
};
struct LabelQuery {
    std::string label;
    std::vector<BBox> boxes;  // empty = negative class
    std::vector<double> confidences;  // parallel to boxes when provided
};
struct ZsodRecord {
    std::string image_id;
    std::vector<LabelQuery> queries;
};
struct VqaGtRecord {
    std::string id;
    std::string question;
    std::vector<std::string> answers;  // >= 1
};
struct VqaPredRecord {
    std::string id;
    std::string answer;
};

// Loaders validate line by line and throw ValidationError with the file and
// line number on malformed JSON, schema mismatches, duplicate ids, or
// invalid boxes.
std::vector<C2cGtRecord> load_c2c_gt(const std::string& path);
std::vector<C2cPredRecord> load_c2c_pred(const std::string& path);
std::vector<TextRecord> load_htr(const std::string& path);
std::vector<ZsodRecord> load_zsod(const std::string& path, bool is_pred);
std::vector<VqaGtRecord> load_vqa_gt(const std::string& path);
std::vector<VqaPredRecord> load_vqa_pred(const std::string& path);

// Schema-only validation pass for any (task, role) pair; returns the record
// count. Used by the harness to reject a submission before scoring.
std::size_t validate_submission(const std::string& path, TaskKind task,
                                bool is_pred);

}  // namespace fbeval::jsonl
