#pragma once

#include <vector>

#include "fbeval/code/ast.hpp"

namespace fbeval::code {

// Variable occurrence. var_index numbers distinct names by first occurrence
// in program order, so consistently renamed programs produce identical
// graphs; def_ordinal counts definitions of that name (0-based).
struct DataflowNode {
    int var_index = 0;
    int def_ordinal = 0;
    bool is_def = false;
    int span_begin = 0;
};

struct DataflowEdge {
    int def_node = 0;  // indexes into nodes
    int use_node = 0;
};

struct DataflowGraph {
    std::vector<DataflowNode> nodes;
    std::vector<DataflowEdge> edges;

    // Normalized edge identity used for matching: the (variable, definition)
    // a use binds to.
    std::vector<std::pair<int, int>> edge_keys() const;
};

// Def-use graph over the parse tree: assignment targets, loop variables and
// parameters define; identifier reads use the most recent definition in
// their scope chain (one scope per function, plus the module scope).
DataflowGraph build_dataflow(const AstNode& ast);

}  // namespace fbeval::code
