#pragma once

#include <string>
#include <vector>

#include "fbeval/code/ast.hpp"
#include "fbeval/code/dataflow.hpp"
#include "fbeval/code/tokens.hpp"

namespace fbeval::code {

// Clipped n-gram precision (max_n orders) with brevity penalty, add-one
// smoothed for n >= 2. Multiple references: the score is the max over them.
// Empty hypothesis scores 0 by convention.
double ngram_match(const std::vector<CodeToken>& hyp,
                   const std::vector<std::vector<CodeToken>>& refs,
                   int max_n = 4);

// Same, with n-grams weighted by the mean of their token weights: keywords
// 1.0, everything else 0.2.
double weighted_ngram_match(const std::vector<CodeToken>& hyp,
                            const std::vector<std::vector<CodeToken>>& refs,
                            int max_n = 4);

// Fraction of reference subtrees (depth >= 1, identifiers anonymized) found
// in the hypothesis subtree multiset, clipped per subtree shape.
double ast_match(const AstNode& hyp, const AstNode& ref);

// Fraction of reference def-use edges present in the hypothesis, after
// first-occurrence variable renaming. Both empty -> 1; ref empty -> 1.
double dataflow_match(const DataflowGraph& hyp, const DataflowGraph& ref);

struct CodeBleuScore {
    double ngram = 0;
    double weighted_ngram = 0;
    double ast = 0;
    double dataflow = 0;
    double total = 0;  // equal 0.25 weights
};

// End-to-end per-pair score; each component takes its max over references.
CodeBleuScore codebleu(const std::string& hyp,
                       const std::vector<std::string>& refs, Language lang);

struct CodePair {
    std::string hyp;
    std::vector<std::string> refs;
};

// Arithmetic mean of per-pair scores (components averaged the same way).
CodeBleuScore codebleu_corpus(const std::vector<CodePair>& pairs, Language lang);

}  // namespace fbeval::code
