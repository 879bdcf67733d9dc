#include "fbeval/code/dataflow.hpp"

#include <string>
#include <unordered_map>

namespace fbeval::code {

std::vector<std::pair<int, int>> DataflowGraph::edge_keys() const {
    std::vector<std::pair<int, int>> keys;
    keys.reserve(edges.size());
    for (const DataflowEdge& e : edges) {
        const DataflowNode& def = nodes[static_cast<std::size_t>(e.def_node)];
        keys.emplace_back(def.var_index, def.def_ordinal);
    }
    return keys;
}

namespace {

class Builder {
public:
    DataflowGraph build(const AstNode& root) {
        scopes_.emplace_back();  // module scope
        visit(root);
        return std::move(graph_);
    }

private:
    DataflowGraph graph_;
    std::unordered_map<std::string, int> var_index_;
    std::unordered_map<std::string, int> def_counts_;
    // name -> index of the live def node, innermost scope last
    std::vector<std::unordered_map<std::string, int>> scopes_;

    static std::string base_name(const std::string& dotted) {
        auto dot = dotted.find('.');
        return dot == std::string::npos ? dotted : dotted.substr(0, dot);
    }

    int var_of(const std::string& name) {
        auto [it, inserted] =
            var_index_.emplace(name, static_cast<int>(var_index_.size()));
        return it->second;
    }

    void add_def(const AstNode& name_node) {
        std::string name = base_name(name_node.text);
        DataflowNode node;
        node.var_index = var_of(name);
        node.def_ordinal = def_counts_[name]++;
        node.is_def = true;
        node.span_begin = name_node.span_begin;
        scopes_.back()[name] = static_cast<int>(graph_.nodes.size());
        graph_.nodes.push_back(node);
    }

    void add_use(const AstNode& name_node) {
        std::string name = base_name(name_node.text);
        DataflowNode node;
        node.var_index = var_of(name);
        node.is_def = false;
        node.span_begin = name_node.span_begin;
        int use_idx = static_cast<int>(graph_.nodes.size());
        graph_.nodes.push_back(node);
        for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
            auto it = scope->find(name);
            if (it != scope->end()) {
                graph_.edges.push_back({it->second, use_idx});
                return;
            }
        }
        // unresolved (builtin or free variable): occurrence without an edge
    }

    void visit_uses(const AstNode& n) {
        if (n.kind == "name") {
            add_use(n);
            return;
        }
        for (const AstNode& c : n.children) visit_uses(c);
    }

    void visit(const AstNode& n) {
        if (n.kind == "assign") {
            // value first: targets are live only afterwards
            visit_uses(n.children.back());
            for (std::size_t i = 0; i + 1 < n.children.size(); ++i)
                add_def(n.children[i]);
            return;
        }
        if (n.kind == "aug_assign") {
            visit_uses(n.children[0]);  // x += e reads x
            visit_uses(n.children[1]);
            add_def(n.children[0]);
            return;
        }
        if (n.kind == "for_stmt") {
            // children: loop names..., iterable/header parts..., body block
            for (const AstNode& c : n.children) {
                if (c.kind == "name") {
                    add_def(c);
                } else {
                    visit(c);
                }
            }
            return;
        }
        if (n.kind == "function_def") {
            add_def(n.children[0]);  // the function name itself
            scopes_.emplace_back();
            for (std::size_t i = 1; i < n.children.size(); ++i) {
                const AstNode& c = n.children[i];
                if (c.kind == "params") {
                    for (const AstNode& p : c.children) add_def(p);
                } else {
                    visit(c);
                }
            }
            scopes_.pop_back();
            return;
        }
        if (n.kind == "name") {
            add_use(n);
            return;
        }
        if (n.kind == "opaque_stmt" || n.kind == "literal") return;
        for (const AstNode& c : n.children) visit(c);
    }
};

}  // namespace

DataflowGraph build_dataflow(const AstNode& ast) { return Builder().build(ast); }

}  // namespace fbeval::code
