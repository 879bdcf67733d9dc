#include "fbeval/code/codebleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace fbeval::code {

namespace {

using NgramCounts = std::unordered_map<std::string, long>;

// N-grams keyed by joined token text; '\x1f' cannot appear in token text.
NgramCounts count_ngrams(const std::vector<CodeToken>& toks, int n) {
    NgramCounts counts;
    if (static_cast<int>(toks.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            if (k) key += '\x1f';
            key += toks[i + k].text;
        }
        ++counts[key];
    }
    return counts;
}

double token_weight(const CodeToken& t) {
    return t.kind == TokenKind::Keyword ? 1.0 : 0.2;
}

// Mean token weight of each n-gram, accumulated alongside the counts.
std::unordered_map<std::string, double> ngram_weights(
    const std::vector<CodeToken>& toks, int n) {
    std::unordered_map<std::string, double> weights;
    if (static_cast<int>(toks.size()) < n) return weights;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
        std::string key;
        double w = 0;
        for (int k = 0; k < n; ++k) {
            if (k) key += '\x1f';
            key += toks[i + k].text;
            w += token_weight(toks[i + k]);
        }
        weights.emplace(key, w / n);
    }
    return weights;
}

double bleu_against_one(const std::vector<CodeToken>& hyp,
                        const std::vector<CodeToken>& ref, int max_n,
                        bool weighted) {
    if (hyp.empty()) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        NgramCounts h = count_ngrams(hyp, n);
        NgramCounts r = count_ngrams(ref, n);
        double matched = 0.0, total = 0.0;
        std::unordered_map<std::string, double> w;
        if (weighted) w = ngram_weights(hyp, n);
        for (const auto& [key, count] : h) {
            double weight = weighted ? w[key] : 1.0;
            total += weight * static_cast<double>(count);
            auto it = r.find(key);
            if (it != r.end())
                matched += weight * static_cast<double>(std::min(count, it->second));
        }
        double p;
        if (n == 1) {
            p = total > 0 ? matched / total : 0.0;
        } else {
            p = (matched + 1.0) / (total + 1.0);  // add-one smoothing
        }
        if (p <= 0.0) return 0.0;
        log_sum += std::log(p);
    }
    double bp = 1.0;
    if (hyp.size() < ref.size())
        bp = std::exp(1.0 - static_cast<double>(ref.size()) /
                                static_cast<double>(hyp.size()));
    return bp * std::exp(log_sum / max_n);
}

double max_over_refs(const std::vector<CodeToken>& hyp,
                     const std::vector<std::vector<CodeToken>>& refs, int max_n,
                     bool weighted) {
    double best = 0.0;
    for (const auto& ref : refs)
        best = std::max(best, bleu_against_one(hyp, ref, max_n, weighted));
    return best;
}

// Canonical subtree serialization: production names plus literal/operator
// payloads; identifiers (and names inside opaque text, handled at parse
// time) anonymize to a placeholder.
void serialize(const AstNode& n, std::string& out) {
    out += n.kind;
    if (n.kind == "name") return;  // anonymized
    if (!n.text.empty()) {
        out += '[';
        out += n.text;
        out += ']';
    }
    if (n.children.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ' ';
        serialize(n.children[i], out);
    }
    out += ')';
}

void collect_subtrees(const AstNode& n, NgramCounts& counts) {
    if (!n.children.empty()) {
        std::string key;
        serialize(n, key);
        ++counts[key];
    }
    for (const AstNode& c : n.children) collect_subtrees(c, counts);
}

}  // namespace

double ngram_match(const std::vector<CodeToken>& hyp,
                   const std::vector<std::vector<CodeToken>>& refs, int max_n) {
    return max_over_refs(hyp, refs, max_n, false);
}

double weighted_ngram_match(const std::vector<CodeToken>& hyp,
                            const std::vector<std::vector<CodeToken>>& refs,
                            int max_n) {
    return max_over_refs(hyp, refs, max_n, true);
}

double ast_match(const AstNode& hyp, const AstNode& ref) {
    NgramCounts hyp_subtrees, ref_subtrees;
    collect_subtrees(hyp, hyp_subtrees);
    collect_subtrees(ref, ref_subtrees);
    long total = 0, matched = 0;
    for (const auto& [key, count] : ref_subtrees) {
        total += count;
        auto it = hyp_subtrees.find(key);
        if (it != hyp_subtrees.end()) matched += std::min(count, it->second);
    }
    if (total == 0) return 1.0;
    return static_cast<double>(matched) / static_cast<double>(total);
}

double dataflow_match(const DataflowGraph& hyp, const DataflowGraph& ref) {
    auto ref_keys = ref.edge_keys();
    if (ref_keys.empty()) return 1.0;  // nothing to recover, hyp extra edges free
    auto hyp_keys = hyp.edge_keys();
    std::map<std::pair<int, int>, long> hyp_counts;
    for (const auto& k : hyp_keys) ++hyp_counts[k];
    std::map<std::pair<int, int>, long> ref_counts;
    for (const auto& k : ref_keys) ++ref_counts[k];
    long matched = 0;
    for (const auto& [key, count] : ref_counts) {
        auto it = hyp_counts.find(key);
        if (it != hyp_counts.end()) matched += std::min(count, it->second);
    }
    return static_cast<double>(matched) / static_cast<double>(ref_keys.size());
}

CodeBleuScore codebleu(const std::string& hyp,
                       const std::vector<std::string>& refs, Language lang) {
    std::vector<CodeToken> hyp_toks = tokenize(hyp, lang);
    std::vector<std::vector<CodeToken>> ref_toks;
    ref_toks.reserve(refs.size());
    for (const std::string& r : refs) ref_toks.push_back(tokenize(r, lang));

    AstNode hyp_ast = parse_subset(hyp_toks, lang);
    DataflowGraph hyp_df = build_dataflow(hyp_ast);

    CodeBleuScore score;
    score.ngram = ngram_match(hyp_toks, ref_toks);
    score.weighted_ngram = weighted_ngram_match(hyp_toks, ref_toks);
    for (const auto& toks : ref_toks) {
        AstNode ref_ast = parse_subset(toks, lang);
        score.ast = std::max(score.ast, ast_match(hyp_ast, ref_ast));
        score.dataflow =
            std::max(score.dataflow, dataflow_match(hyp_df, build_dataflow(ref_ast)));
    }
    score.total =
        0.25 * (score.ngram + score.weighted_ngram + score.ast + score.dataflow);
    return score;
}

CodeBleuScore codebleu_corpus(const std::vector<CodePair>& pairs, Language lang) {
    if (pairs.empty()) throw ValidationError("codebleu_corpus: empty corpus");
    CodeBleuScore mean;
    for (const CodePair& p : pairs) {
        CodeBleuScore s = codebleu(p.hyp, p.refs, lang);
        mean.ngram += s.ngram;
        mean.weighted_ngram += s.weighted_ngram;
        mean.ast += s.ast;
        mean.dataflow += s.dataflow;
        mean.total += s.total;
    }
    double n = static_cast<double>(pairs.size());
    mean.ngram /= n;
    mean.weighted_ngram /= n;
    mean.ast /= n;
    mean.dataflow /= n;
    mean.total /= n;
    return mean;
}

}  // namespace fbeval::code
