#pragma once

#include <string>
#include <vector>

#include "fbeval/code/tokens.hpp"

namespace fbeval::code {

// Parse tree over the grammar subset: function defs, assignments,
// if/while/for, return, calls, binary/unary expressions, blocks. Anything
// else collapses into a flat opaque_stmt covering its tokens, so parsing is
// total on lexed input.
//
// kind is the grammar-production name; leaves (name, literal, opaque_stmt)
// carry their payload in text, binop/unaryop/aug_assign carry the operator.
// span is the [begin, end) token range; child spans are disjoint, ordered,
// and contained in the parent's.
struct AstNode {
    std::string kind;
    std::string text;
    std::vector<AstNode> children;
    int span_begin = 0;
    int span_end = 0;

    bool is_leaf() const { return children.empty(); }
};

AstNode parse_subset(const std::vector<CodeToken>& tokens, Language lang);

// Number of nodes in the tree (root included).
std::size_t ast_size(const AstNode& node);

}  // namespace fbeval::code
