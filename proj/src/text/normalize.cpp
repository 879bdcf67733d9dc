#include "fbeval/text.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace fbeval::text {

namespace {

struct ComposePair {
    std::uint32_t base;
    std::uint32_t mark;
    std::uint32_t composed;
};

#include "compose_table.inc"

std::uint32_t compose_pair(std::uint32_t base, std::uint32_t mark) {
    auto key = [](std::uint32_t b, std::uint32_t m) {
        return (static_cast<std::uint64_t>(b) << 32) | m;
    };
    const ComposePair* lo = std::begin(kComposePairs);
    const ComposePair* hi = std::end(kComposePairs);
    auto it = std::lower_bound(lo, hi, key(base, mark),
                               [&](const ComposePair& p, std::uint64_t k) {
                                   return key(p.base, p.mark) < k;
                               });
    if (it != hi && it->base == base && it->mark == mark) return it->composed;
    return 0;
}

bool is_combining_mark(std::uint32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

std::vector<std::uint32_t> decode_utf8(const std::string& s) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::uint32_t cp = 0;
        int extra = 0;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6) {
            cp = c & 0x1F;
            extra = 1;
        } else if ((c >> 4) == 0xE) {
            cp = c & 0x0F;
            extra = 2;
        } else if ((c >> 3) == 0x1E) {
            cp = c & 0x07;
            extra = 3;
        } else {
            cp = 0xFFFD;  // stray continuation byte
        }
        ++i;
        for (int k = 0; k < extra; ++k) {
            if (i < s.size() && (static_cast<unsigned char>(s[i]) >> 6) == 0x2) {
                cp = (cp << 6) | (static_cast<unsigned char>(s[i]) & 0x3F);
                ++i;
            } else {
                cp = 0xFFFD;
                break;
            }
        }
        out.push_back(cp);
    }
    return out;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

void compose(std::vector<std::uint32_t>& cps) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (out > 0 && is_combining_mark(cps[i])) {
            std::uint32_t c = compose_pair(cps[out - 1], cps[i]);
            if (c != 0) {
                cps[out - 1] = c;  // composite may absorb further marks
                continue;
            }
        }
        cps[out++] = cps[i];
    }
    cps.resize(out);
}

std::uint32_t to_lower_cp(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;  // Latin-1
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;                  // А..Я
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;                  // Ѐ..Џ
    // Latin Extended-A / Greek / Cyrillic extensions alternate case pairwise.
    if ((cp >= 0x0100 && cp <= 0x0177) || (cp >= 0x01DE && cp <= 0x01EF) ||
        (cp >= 0x0460 && cp <= 0x0481) || (cp >= 0x048A && cp <= 0x04BF) ||
        (cp >= 0x04D0 && cp <= 0x04FF))
        return (cp & 1) ? cp : cp + 1;
    if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;  // Greek
    return cp;
}

bool is_whitespace(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
           cp == '\v' || cp == 0x00A0 || cp == 0x2009 || cp == 0x200A ||
           cp == 0x2028 || cp == 0x2029 || cp == 0x3000;
}

bool is_punctuation(std::uint32_t cp) {
    if (cp < 0x80)
        return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
               (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
    switch (cp) {
        case 0x00A1: case 0x00AB: case 0x00BB: case 0x00BF:  // ¡ « » ¿
        case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014:
        case 0x2015: case 0x2018: case 0x2019: case 0x201A: case 0x201C:
        case 0x201D: case 0x201E: case 0x2026: case 0x2032: case 0x2033:
        case 0x00B7:
            return true;
        default:
            return false;
    }
}

}  // namespace

NormalizationPolicy parse_policy(const std::string& flags) {
    NormalizationPolicy p;
    std::size_t start = 0;
    while (start <= flags.size()) {
        std::size_t end = flags.find(',', start);
        if (end == std::string::npos) end = flags.size();
        std::string f = flags.substr(start, end - start);
        if (f == "lowercase") p.lowercase = true;
        else if (f == "strip_punctuation") p.strip_punctuation = true;
        else if (f == "collapse_whitespace") p.collapse_whitespace = true;
        else if (f == "none" || f.empty()) { /* no-op */ }
        else throw ValidationError("unknown normalization flag: " + f);
        start = end + 1;
    }
    return p;
}

std::string compose_canonical(const std::string& utf8) {
    std::vector<std::uint32_t> cps = decode_utf8(utf8);
    compose(cps);
    std::string out;
    out.reserve(utf8.size());
    for (std::uint32_t cp : cps) encode_utf8(cp, out);
    return out;
}

std::string normalize(const std::string& utf8, const NormalizationPolicy& policy) {
    std::vector<std::uint32_t> cps = decode_utf8(utf8);
    compose(cps);
    if (policy.lowercase)
        for (std::uint32_t& cp : cps) cp = to_lower_cp(cp);
    if (policy.strip_punctuation) {
        std::erase_if(cps, [](std::uint32_t cp) { return is_punctuation(cp); });
    }
    if (policy.collapse_whitespace) {
        std::vector<std::uint32_t> out;
        out.reserve(cps.size());
        bool pending_space = false;
        for (std::uint32_t cp : cps) {
            if (is_whitespace(cp)) {
                pending_space = !out.empty();
                continue;
            }
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(cp);
        }
        cps = std::move(out);
    }
    std::string out;
    out.reserve(utf8.size());
    for (std::uint32_t cp : cps) encode_utf8(cp, out);
    return out;
}

namespace {

// Shared mean-of-matches loop for both accuracies.
template <typename GtVec, typename Matches>
ScoreReport accuracy_over(const GtVec& gt,
                          const std::vector<std::pair<std::string, std::string>>& pred,
                          TaskKind task, Matches&& matches) {
    std::unordered_map<std::string, const std::string*> by_id;
    by_id.reserve(pred.size());
    for (const auto& [id, answer] : pred) by_id.emplace(id, &answer);

    ScoreReport report;
    report.task = task;
    report.sample_count = static_cast<int>(gt.size());
    long correct = 0;
    for (const auto& rec : gt) {
        auto it = by_id.find(rec.first);
        double value = 0.0;
        if (it == by_id.end()) {
            ++report.warnings;  // missing prediction counts as wrong
        } else if (matches(rec.second, *it->second)) {
            value = 1.0;
            ++correct;
        }
        report.per_sample.emplace_back(rec.first, value);
    }
    report.score = gt.empty() ? 0.0
                              : static_cast<double>(correct) /
                                    static_cast<double>(gt.size());
    return report;
}

}  // namespace

ScoreReport htr_accuracy(
    const std::vector<std::pair<std::string, std::string>>& gt,
    const std::vector<std::pair<std::string, std::string>>& pred,
    const NormalizationPolicy& policy) {
    return accuracy_over(gt, pred, TaskKind::HTR,
                         [&](const std::string& truth, const std::string& answer) {
                             return normalize(answer, policy) ==
                                    normalize(truth, policy);
                         });
}

ScoreReport vqa_accuracy(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& gt,
    const std::vector<std::pair<std::string, std::string>>& pred,
    const NormalizationPolicy& policy) {
    for (const auto& [id, answers] : gt)
        if (answers.empty())
            throw ValidationError("vqa gt record '" + id + "' has no answers");
    return accuracy_over(gt, pred, TaskKind::VQA,
                         [&](const std::vector<std::string>& answers,
                             const std::string& answer) {
                             std::string norm = normalize(answer, policy);
                             for (const std::string& a : answers)
                                 if (normalize(a, policy) == norm) return true;
                             return false;
                         });
}

}  // namespace fbeval::text
