#include "fbeval/jsonl.hpp"

#include <fstream>
#include <functional>
#include <unordered_set>

#include <json.hpp>

namespace fbeval::jsonl {

namespace {

using nlohmann::json;

// Applies fn to every parsed line and enforces id uniqueness.
void for_each_record(
    const std::string& path,
    const std::function<std::string(const json&, int line)>& fn) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::unordered_set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() ||
            line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(path, line_no,
                                  std::string("malformed JSON: ") + e.what());
        }
        if (!obj.is_object())
            throw ValidationError(path, line_no, "expected a JSON object");
        std::string id = fn(obj, line_no);
        if (!seen.insert(id).second)
            throw ValidationError(path, line_no, "duplicate id \"" + id + "\"");
    }
}

std::string require_string(const json& obj, const char* key,
                           const std::string& path, int line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw ValidationError(path, line,
                              std::string("field \"") + key +
                                  "\" missing or not a string");
    return it->get<std::string>();
}

std::vector<std::string> require_string_list(const json& obj, const char* key,
                                             const std::string& path, int line,
                                             std::size_t min_size) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array())
        throw ValidationError(path, line,
                              std::string("field \"") + key +
                                  "\" missing or not a list");
    std::vector<std::string> out;
    for (const json& v : *it) {
        if (!v.is_string())
            throw ValidationError(path, line,
                                  std::string("field \"") + key +
                                      "\" must hold strings");
        out.push_back(v.get<std::string>());
    }
    if (out.size() < min_size)
        throw ValidationError(path, line,
                              std::string("field \"") + key + "\" needs at least " +
                                  std::to_string(min_size) + " entries");
    return out;
}

// Corner-form box, optionally with a trailing confidence on predictions.
void parse_box(const json& arr, bool is_pred, LabelQuery& q,
               const std::string& path, int line) {
    if (!arr.is_array() || arr.size() < 4 || arr.size() > (is_pred ? 5u : 4u))
        throw ValidationError(path, line,
                              is_pred ? "box must be [x1,y1,x2,y2] or "
                                        "[x1,y1,x2,y2,confidence]"
                                      : "box must be [x1,y1,x2,y2]");
    for (const json& v : arr)
        if (!v.is_number())
            throw ValidationError(path, line, "box coordinates must be numbers");
    BBox box{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
             arr[3].get<double>()};
    if (box.x_min > box.x_max || box.y_min > box.y_max)
        throw ValidationError(path, line,
                              "invalid box: min corner beyond max corner");
    if (box.x_min < 0 || box.y_min < 0)
        throw ValidationError(path, line, "invalid box: negative coordinate");
    q.boxes.push_back(box);
    q.confidences.push_back(arr.size() == 5 ? arr[4].get<double>() : 1.0);
}

}  // namespace

std::vector<C2cGtRecord> load_c2c_gt(const std::string& path) {
    std::vector<C2cGtRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        C2cGtRecord rec;
        rec.id = require_string(obj, "id", path, line);
        rec.java = require_string(obj, "java", path, line);
        rec.python_refs = require_string_list(obj, "python", path, line, 1);
        out.push_back(std::move(rec));
        return out.back().id;
    });
    return out;
}

std::vector<C2cPredRecord> load_c2c_pred(const std::string& path) {
    std::vector<C2cPredRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        C2cPredRecord rec;
        rec.id = require_string(obj, "id", path, line);
        rec.python = require_string(obj, "python", path, line);
        out.push_back(std::move(rec));
        return out.back().id;
    });
    return out;
}

std::vector<TextRecord> load_htr(const std::string& path) {
    std::vector<TextRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        TextRecord rec;
        rec.id = require_string(obj, "id", path, line);
        rec.text = require_string(obj, "text", path, line);
        out.push_back(std::move(rec));
        return out.back().id;
    });
    return out;
}

std::vector<ZsodRecord> load_zsod(const std::string& path, bool is_pred) {
    std::vector<ZsodRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        ZsodRecord rec;
        rec.image_id = require_string(obj, "image_id", path, line);
        auto it = obj.find("queries");
        if (it == obj.end() || !it->is_array())
            throw ValidationError(path, line,
                                  "field \"queries\" missing or not a list");
        for (const json& q : *it) {
            if (!q.is_object())
                throw ValidationError(path, line, "query must be an object");
            LabelQuery query;
            query.label = require_string(q, "label", path, line);
            auto boxes = q.find("boxes");
            if (boxes == q.end() || !boxes->is_array())
                throw ValidationError(path, line,
                                      "field \"boxes\" missing or not a list");
            for (const json& b : *boxes) parse_box(b, is_pred, query, path, line);
            rec.queries.push_back(std::move(query));
        }
        out.push_back(std::move(rec));
        return out.back().image_id;
    });
    return out;
}

std::vector<VqaGtRecord> load_vqa_gt(const std::string& path) {
    std::vector<VqaGtRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        VqaGtRecord rec;
        rec.id = require_string(obj, "id", path, line);
        rec.question = require_string(obj, "question", path, line);
        rec.answers = require_string_list(obj, "answers", path, line, 1);
        out.push_back(std::move(rec));
        return out.back().id;
    });
    return out;
}

std::vector<VqaPredRecord> load_vqa_pred(const std::string& path) {
    std::vector<VqaPredRecord> out;
    for_each_record(path, [&](const json& obj, int line) {
        VqaPredRecord rec;
        rec.id = require_string(obj, "id", path, line);
        rec.answer = require_string(obj, "answer", path, line);
        out.push_back(std::move(rec));
        return out.back().id;
    });
    return out;
}

std::size_t validate_submission(const std::string& path, TaskKind task,
                                bool is_pred) {
    switch (task) {
        case TaskKind::C2C:
            return is_pred ? load_c2c_pred(path).size() : load_c2c_gt(path).size();
        case TaskKind::HTR:
            return load_htr(path).size();
        case TaskKind::ZsOD:
            return load_zsod(path, is_pred).size();
        case TaskKind::VQA:
            return is_pred ? load_vqa_pred(path).size() : load_vqa_gt(path).size();
    }
    return 0;
}

}  // namespace fbeval::jsonl
