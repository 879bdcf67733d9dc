#include "fbeval/code/ast.hpp"

#include <algorithm>
#include <optional>

namespace fbeval::code {

namespace {

// Thrown inside statement parsing to collapse the statement to opaque_stmt.
struct ParseBail {};

bool text_is(const CodeToken& t, std::string_view s) { return t.text == s; }

class Parser {
public:
    Parser(const std::vector<CodeToken>& tokens, Language lang)
        : toks_(tokens), lang_(lang) {}

    AstNode run() {
        AstNode module = make_node("module", 0);
        while (!eof()) {
            if (is_dedent(peek())) {  // stray block closer at top level
                advance();
                continue;
            }
            module.children.push_back(parse_statement());
        }
        module.span_end = static_cast<int>(toks_.size());
        return module;
    }

private:
    const std::vector<CodeToken>& toks_;
    Language lang_;
    std::size_t pos_ = 0;

    // ---- token helpers -----------------------------------------------------

    bool eof() const { return pos_ >= toks_.size(); }
    const CodeToken& peek(std::size_t off = 0) const {
        static const CodeToken sentinel{TokenKind::Punctuation, "", 0, 0};
        return pos_ + off < toks_.size() ? toks_[pos_ + off] : sentinel;
    }
    const CodeToken& advance() {
        if (eof()) throw ParseBail{};
        return toks_[pos_++];
    }
    void expect_text(std::string_view s) {
        if (eof() || peek().text != s) throw ParseBail{};
        ++pos_;
    }
    bool accept_text(std::string_view s) {
        if (!eof() && peek().text == s) {
            ++pos_;
            return true;
        }
        return false;
    }
    static bool is_indent(const CodeToken& t) {
        return t.kind == TokenKind::Punctuation && t.text == kIndentText;
    }
    static bool is_dedent(const CodeToken& t) {
        return t.kind == TokenKind::Punctuation && t.text == kDedentText;
    }

    AstNode make_node(std::string kind, std::size_t begin) const {
        AstNode n;
        n.kind = std::move(kind);
        n.span_begin = static_cast<int>(begin);
        n.span_end = static_cast<int>(begin);
        return n;
    }
    void close(AstNode& n) const { n.span_end = static_cast<int>(pos_); }

    AstNode leaf(std::string kind, std::string text, std::size_t begin,
                 std::size_t end) const {
        AstNode n;
        n.kind = std::move(kind);
        n.text = std::move(text);
        n.span_begin = static_cast<int>(begin);
        n.span_end = static_cast<int>(end);
        return n;
    }

    // End of a Python logical line: next token sits on a later source line.
    // Brackets are already balanced by the expression parser, so a line
    // break seen here is a real statement boundary.
    bool at_line_end() const {
        if (eof()) return true;
        if (is_dedent(peek()) || is_indent(peek())) return true;
        return pos_ > 0 && peek().line > toks_[pos_ - 1].line;
    }

    // ---- statement dispatch -------------------------------------------------

    AstNode parse_statement() {
        std::size_t start = pos_;
        try {
            return lang_ == Language::Python ? python_statement()
                                             : java_statement();
        } catch (const ParseBail&) {
            pos_ = start;
            return consume_opaque();
        }
    }

    // Opaque fallback: swallow the rest of the construct and keep its tokens
    // (identifiers anonymized so the node is stable under renaming).
    AstNode consume_opaque() {
        std::size_t start = pos_;
        AstNode n = make_node("opaque_stmt", start);
        std::string joined;
        auto append = [&](const CodeToken& t) {
            if (!joined.empty()) joined += ' ';
            joined += (t.kind == TokenKind::Identifier) ? "_" : t.text;
        };
        if (lang_ == Language::Python) {
            while (!eof() && !at_line_end_or_start(start)) append(advance());
            if (!eof() && is_indent(peek())) {  // swallow the dangling suite
                int depth = 0;
                do {
                    const CodeToken& t = peek();
                    if (is_indent(t)) ++depth;
                    if (is_dedent(t)) --depth;
                    append(advance());
                } while (!eof() && depth > 0);
            }
        } else {
            int depth = 0;
            while (!eof()) {
                const CodeToken& t = peek();
                if (depth == 0 && t.text == "}") break;  // enclosing block closer
                if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
                if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
                append(advance());
                if (depth == 0 && (t.text == ";" || t.text == "}")) break;
            }
        }
        if (pos_ == start) append(advance());  // guarantee progress
        n.text = std::move(joined);
        close(n);
        return n;
    }

    bool at_line_end_or_start(std::size_t start) const {
        if (eof()) return true;
        if (is_dedent(peek()) || is_indent(peek())) return true;
        return pos_ > start && peek().line > toks_[pos_ - 1].line;
    }

    // ---- python -------------------------------------------------------------

    AstNode python_statement() {
        const CodeToken& t = peek();
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "def") return python_function();
            if (t.text == "if") return python_if();
            if (t.text == "while") return python_while();
            if (t.text == "for") return python_for();
            if (t.text == "return") return python_return();
            if (t.text == "pass") {
                AstNode n = make_node("expr_stmt", pos_);
                advance();
                end_simple_statement();
                close(n);
                return n;
            }
            if (t.text == "True" || t.text == "False" || t.text == "None")
                return python_simple();  // literal-headed expression
            throw ParseBail{};  // class/import/try/... -> opaque
        }
        return python_simple();
    }

    AstNode python_function() {
        AstNode n = make_node("function_def", pos_);
        expect_text("def");
        n.children.push_back(parse_name_leaf());
        n.children.push_back(parse_params());
        if (accept_text("->")) skip_until_colon();  // return annotation
        expect_text(":");
        n.children.push_back(python_suite());
        close(n);
        return n;
    }

    void skip_until_colon() {
        int depth = 0;
        while (!eof()) {
            const std::string& s = peek().text;
            if (depth == 0 && s == ":") return;
            if (s == "(" || s == "[" || s == "{") ++depth;
            if (s == ")" || s == "]" || s == "}") --depth;
            advance();
        }
        throw ParseBail{};
    }

    // Parameter list: record each parameter's name, skip annotations,
    // defaults and star markers without structure.
    AstNode parse_params() {
        AstNode n = make_node("params", pos_);
        expect_text("(");
        int depth = 1;
        bool want_name = true;
        while (!eof() && depth > 0) {
            const CodeToken& t = peek();
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
            if (depth == 0) {
                advance();
                break;
            }
            if (depth == 1 && t.text == ",") want_name = true;
            else if (depth == 1 && want_name && t.kind == TokenKind::Identifier) {
                n.children.push_back(leaf("name", t.text, pos_, pos_ + 1));
                want_name = false;
            } else if (depth == 1 && (t.text == "=" || t.text == ":")) {
                want_name = false;
            }
            advance();
        }
        if (depth > 0) throw ParseBail{};
        close(n);
        return n;
    }

    AstNode python_if() {
        AstNode n = make_node("if_stmt", pos_);
        expect_text("if");
        n.children.push_back(parse_expression());
        expect_text(":");
        n.children.push_back(python_suite());
        while (!eof() && peek().text == "elif") {
            advance();
            n.children.push_back(parse_expression());
            expect_text(":");
            n.children.push_back(python_suite());
        }
        if (!eof() && peek().text == "else") {
            advance();
            expect_text(":");
            n.children.push_back(python_suite());
        }
        close(n);
        return n;
    }

    AstNode python_while() {
        AstNode n = make_node("while_stmt", pos_);
        expect_text("while");
        n.children.push_back(parse_expression());
        expect_text(":");
        n.children.push_back(python_suite());
        close(n);
        return n;
    }

    AstNode python_for() {
        AstNode n = make_node("for_stmt", pos_);
        expect_text("for");
        n.children.push_back(parse_name_leaf());
        while (accept_text(",")) n.children.push_back(parse_name_leaf());
        expect_text("in");
        n.children.push_back(parse_expression());
        expect_text(":");
        n.children.push_back(python_suite());
        close(n);
        return n;
    }

    AstNode python_return() {
        AstNode n = make_node("return_stmt", pos_);
        expect_text("return");
        if (!at_line_end() && peek().text != ";") {
            n.children.push_back(parse_expression());
            while (accept_text(",")) n.children.push_back(parse_expression());
        }
        end_simple_statement();
        close(n);
        return n;
    }

    // Assignment chain or bare expression statement.
    AstNode python_simple() {
        std::size_t start = pos_;
        AstNode first = parse_expression();
        if (!eof() && peek().text == "=" && peek().kind == TokenKind::Operator) {
            AstNode n = make_node("assign", start);
            if (first.kind != "name") throw ParseBail{};
            n.children.push_back(std::move(first));
            advance();
            while (true) {
                AstNode value = parse_expression();
                if (!eof() && peek().text == "=" &&
                    peek().kind == TokenKind::Operator) {
                    if (value.kind != "name") throw ParseBail{};
                    n.children.push_back(std::move(value));
                    advance();
                    continue;
                }
                n.children.push_back(std::move(value));
                break;
            }
            end_simple_statement();
            close(n);
            return n;
        }
        if (!eof() && is_aug_op(peek())) {
            if (first.kind != "name") throw ParseBail{};
            AstNode n = make_node("aug_assign", start);
            n.text = peek().text;
            advance();
            n.children.push_back(std::move(first));
            n.children.push_back(parse_expression());
            end_simple_statement();
            close(n);
            return n;
        }
        AstNode n = make_node("expr_stmt", start);
        n.children.push_back(std::move(first));
        end_simple_statement();
        close(n);
        return n;
    }

    static bool is_aug_op(const CodeToken& t) {
        if (t.kind != TokenKind::Operator) return false;
        return t.text.size() >= 2 && t.text.back() == '=' && t.text != "==" &&
               t.text != "!=" && t.text != "<=" && t.text != ">=";
    }

    // A statement must exhaust its logical line (optionally via ';').
    void end_simple_statement() {
        if (accept_text(";")) return;
        if (!at_line_end()) throw ParseBail{};
    }

    AstNode python_suite() {
        AstNode block = make_node("block", pos_);
        if (!eof() && is_indent(peek())) {
            advance();
            while (!eof() && !is_dedent(peek()))
                block.children.push_back(parse_statement());
            if (!eof()) advance();  // dedent
        } else {
            // inline suite: one or more simple statements on the header line
            block.children.push_back(python_statement());
            while (!at_line_end() && !eof())
                block.children.push_back(python_statement());
        }
        close(block);
        return block;
    }

    AstNode parse_name_leaf() {
        if (eof() || peek().kind != TokenKind::Identifier) throw ParseBail{};
        std::size_t start = pos_;
        std::string text = advance().text;
        return leaf("name", std::move(text), start, pos_);
    }

    // ---- java ---------------------------------------------------------------

    AstNode java_statement() {
        skip_java_annotations();
        std::size_t start = pos_;
        if (std::optional<AstNode> fn = try_java_function()) return *fn;
        pos_ = start;

        const CodeToken& t = peek();
        if (t.text == "{") return java_block();
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") return java_if();
            if (t.text == "while") return java_while();
            if (t.text == "for") return java_for();
            if (t.text == "return") return java_return();
            if (is_java_type_start(t)) {
                if (std::optional<AstNode> decl = try_java_var_decl()) return *decl;
                pos_ = start;
            }
            throw ParseBail{};  // class/try/switch/new/... -> opaque
        }
        if (t.kind == TokenKind::Identifier) {
            if (std::optional<AstNode> decl = try_java_var_decl()) return *decl;
            pos_ = start;
        }
        return java_expr_statement();
    }

    void skip_java_annotations() {
        while (!eof() && peek().text == "@") {
            advance();
            if (!eof() && peek().kind == TokenKind::Identifier) advance();
            if (!eof() && peek().text == "(") skip_balanced("(", ")");
        }
    }

    void skip_balanced(std::string_view open, std::string_view closer) {
        expect_text(open);
        int depth = 1;
        while (!eof() && depth > 0) {
            const std::string& s = peek().text;
            if (s == open) ++depth;
            if (s == closer) --depth;
            advance();
        }
        if (depth != 0) throw ParseBail{};
    }

    static bool is_java_modifier(const CodeToken& t) {
        return t.kind == TokenKind::Keyword &&
               (t.text == "public" || t.text == "private" || t.text == "protected" ||
                t.text == "static" || t.text == "final" || t.text == "abstract" ||
                t.text == "synchronized" || t.text == "native" ||
                t.text == "strictfp" || t.text == "default");
    }

    static bool is_java_primitive(const CodeToken& t) {
        return t.kind == TokenKind::Keyword &&
               (t.text == "void" || t.text == "int" || t.text == "long" ||
                t.text == "short" || t.text == "byte" || t.text == "char" ||
                t.text == "boolean" || t.text == "float" || t.text == "double");
    }

    bool is_java_type_start(const CodeToken& t) const {
        return is_java_primitive(t) || t.kind == TokenKind::Identifier;
    }

    // Consume a type: primitive or dotted identifier, optional generics and
    // array brackets. Returns false (without bailing) if the shape is off.
    bool skip_java_type() {
        if (eof()) return false;
        if (is_java_primitive(peek())) {
            advance();
        } else if (peek().kind == TokenKind::Identifier) {
            advance();
            while (!eof() && peek().text == "." &&
                   peek(1).kind == TokenKind::Identifier) {
                advance();
                advance();
            }
            if (!eof() && peek().text == "<") {
                int depth = 0;
                std::size_t save = pos_;
                do {
                    if (eof()) {
                        pos_ = save;
                        return false;
                    }
                    const std::string& s = peek().text;
                    if (s == "<") ++depth;
                    else if (s == ">") --depth;
                    else if (s == ">>") depth -= 2;
                    else if (s == ">>>") depth -= 3;
                    else if (s == ";" || s == "{" || s == ")") {
                        pos_ = save;
                        return false;  // comparison, not generics
                    }
                    advance();
                } while (depth > 0);
                if (depth < 0) {
                    pos_ = save;
                    return false;
                }
            }
        } else {
            return false;
        }
        while (!eof() && peek().text == "[" && peek(1).text == "]") {
            advance();
            advance();
        }
        return true;
    }

    // [modifiers] type name ( params ) { body } -- constructors match too
    // since "type name" degenerates to the constructor name plus '('.
    std::optional<AstNode> try_java_function() {
        std::size_t start = pos_;
        AstNode n = make_node("function_def", start);
        while (!eof() && is_java_modifier(peek())) advance();
        std::size_t after_mods = pos_;
        if (!skip_java_type()) {
            pos_ = start;
            return std::nullopt;
        }
        std::optional<AstNode> name;
        if (!eof() && peek().kind == TokenKind::Identifier &&
            peek(1).text == "(") {
            name = parse_name_leaf();
        } else if (pos_ == after_mods + 1 && !eof() && peek().text == "(" &&
                   toks_[after_mods].kind == TokenKind::Identifier) {
            // constructor: the "type" we just consumed was the name
            name = leaf("name", toks_[after_mods].text, after_mods, after_mods + 1);
        } else {
            pos_ = start;
            return std::nullopt;
        }
        if (eof() || peek().text != "(") {
            pos_ = start;
            return std::nullopt;
        }
        AstNode params = java_params();
        if (!eof() && peek().text == "throws") {
            while (!eof() && peek().text != "{" && peek().text != ";") advance();
        }
        if (eof() || (peek().text != "{" && peek().text != ";")) {
            pos_ = start;
            return std::nullopt;
        }
        n.children.push_back(std::move(*name));
        n.children.push_back(std::move(params));
        if (peek().text == "{") {
            n.children.push_back(java_block());
        } else {
            advance();  // abstract/interface method
        }
        close(n);
        return n;
    }

    // Java parameters: the name is the last identifier of each segment.
    // Angle depth keeps commas inside generics from splitting a segment.
    AstNode java_params() {
        AstNode n = make_node("params", pos_);
        expect_text("(");
        int depth = 1;
        int angle = 0;
        std::optional<std::size_t> last_ident;
        auto flush = [&]() {
            if (last_ident) {
                n.children.push_back(leaf("name", toks_[*last_ident].text,
                                          *last_ident, *last_ident + 1));
                last_ident.reset();
            }
        };
        while (!eof() && depth > 0) {
            const CodeToken& t = peek();
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
            if (depth == 0) {
                flush();
                advance();
                break;
            }
            if (t.text == "<") ++angle;
            else if (t.text == ">") angle = std::max(0, angle - 1);
            else if (t.text == ">>") angle = std::max(0, angle - 2);
            else if (t.text == ">>>") angle = std::max(0, angle - 3);
            if (depth == 1 && angle == 0 && t.text == ",") flush();
            else if (depth == 1 && t.kind == TokenKind::Identifier)
                last_ident = pos_;
            advance();
        }
        if (depth > 0) throw ParseBail{};
        close(n);
        return n;
    }

    AstNode java_block() {
        AstNode block = make_node("block", pos_);
        expect_text("{");
        while (!eof() && peek().text != "}")
            block.children.push_back(parse_statement());
        expect_text("}");
        close(block);
        return block;
    }

    AstNode java_if() {
        AstNode n = make_node("if_stmt", pos_);
        expect_text("if");
        expect_text("(");
        n.children.push_back(parse_expression());
        expect_text(")");
        n.children.push_back(java_statement_as_block());
        if (accept_text("else")) n.children.push_back(java_statement_as_block());
        close(n);
        return n;
    }

    AstNode java_while() {
        AstNode n = make_node("while_stmt", pos_);
        expect_text("while");
        expect_text("(");
        n.children.push_back(parse_expression());
        expect_text(")");
        n.children.push_back(java_statement_as_block());
        close(n);
        return n;
    }

    AstNode java_for() {
        AstNode n = make_node("for_stmt", pos_);
        expect_text("for");
        expect_text("(");
        // enhanced for: (type name : expr)
        std::size_t save = pos_;
        if (try_enhanced_for_header(n)) {
            expect_text(")");
            n.children.push_back(java_statement_as_block());
            close(n);
            return n;
        }
        pos_ = save;
        auto push_clause = [&](AstNode&& clause) {
            // header clauses carry the expression directly, no stmt wrapper
            if (clause.kind == "expr_stmt" && clause.children.size() == 1)
                n.children.push_back(std::move(clause.children[0]));
            else
                n.children.push_back(std::move(clause));
        };
        if (!accept_text(";")) {
            if (std::optional<AstNode> decl = try_java_var_decl_no_semi()) {
                n.children.push_back(std::move(*decl));
            } else {
                push_clause(java_assign_or_expr_no_semi());
            }
            expect_text(";");
        }
        if (!accept_text(";")) {
            n.children.push_back(parse_expression());
            expect_text(";");
        }
        if (peek().text != ")") {
            push_clause(java_assign_or_expr_no_semi());
            while (accept_text(",")) push_clause(java_assign_or_expr_no_semi());
        }
        expect_text(")");
        n.children.push_back(java_statement_as_block());
        close(n);
        return n;
    }

    bool try_enhanced_for_header(AstNode& n) {
        std::size_t save = pos_;
        if (!skip_java_type()) return false;
        if (eof() || peek().kind != TokenKind::Identifier) {
            pos_ = save;
            return false;
        }
        AstNode var = parse_name_leaf();
        if (!accept_text(":")) {
            pos_ = save;
            return false;
        }
        n.children.push_back(std::move(var));
        n.children.push_back(parse_expression());
        return true;
    }

    AstNode java_statement_as_block() { return parse_statement(); }

    AstNode java_return() {
        AstNode n = make_node("return_stmt", pos_);
        expect_text("return");
        if (!eof() && peek().text != ";")
            n.children.push_back(parse_expression());
        expect_text(";");
        close(n);
        return n;
    }

    std::optional<AstNode> try_java_var_decl() {
        std::optional<AstNode> n = try_java_var_decl_no_semi();
        if (!n) return std::nullopt;
        if (!accept_text(";")) return std::nullopt;
        n->span_end = static_cast<int>(pos_);
        return n;
    }

    // type name = expr -- a single declarator with initializer becomes an
    // assign node; anything fancier falls back to opaque.
    std::optional<AstNode> try_java_var_decl_no_semi() {
        std::size_t start = pos_;
        while (!eof() && peek().text == "final") advance();
        if (!skip_java_type()) {
            pos_ = start;
            return std::nullopt;
        }
        if (eof() || peek().kind != TokenKind::Identifier ||
            !(peek(1).text == "=" && peek(1).kind == TokenKind::Operator)) {
            pos_ = start;
            return std::nullopt;
        }
        AstNode n = make_node("assign", start);
        n.children.push_back(parse_name_leaf());
        advance();  // '='
        n.children.push_back(parse_expression());
        if (!eof() && peek().text == ",") {  // multi-declarator: hand back
            pos_ = start;
            return std::nullopt;
        }
        close(n);
        return n;
    }

    AstNode java_assign_or_expr_no_semi() {
        std::size_t start = pos_;
        AstNode first = parse_expression();
        if (!eof() && peek().kind == TokenKind::Operator && peek().text == "=") {
            if (first.kind != "name") throw ParseBail{};
            AstNode n = make_node("assign", start);
            n.children.push_back(std::move(first));
            advance();
            n.children.push_back(parse_expression());
            close(n);
            return n;
        }
        if (!eof() && is_aug_op(peek())) {
            if (first.kind != "name") throw ParseBail{};
            AstNode n = make_node("aug_assign", start);
            n.text = peek().text;
            advance();
            n.children.push_back(std::move(first));
            n.children.push_back(parse_expression());
            close(n);
            return n;
        }
        AstNode n = make_node("expr_stmt", start);
        n.children.push_back(std::move(first));
        close(n);
        return n;
    }

    AstNode java_expr_statement() {
        AstNode n = java_assign_or_expr_no_semi();
        expect_text(";");
        n.span_end = static_cast<int>(pos_);
        return n;
    }

    // ---- expressions (shared precedence climbing) ----------------------------

    struct OpLevel {
        std::vector<std::string_view> ops;
        bool keywords = false;  // ops are keyword tokens (Python and/or/in/is)
    };

    const std::vector<OpLevel>& levels() const {
        static const std::vector<OpLevel> python = {
            {{"or"}, true},
            {{"and"}, true},
            {{"==", "!=", "<", ">", "<=", ">="}, false},
            {{"in", "is"}, true},
            {{"|"}, false},
            {{"^"}, false},
            {{"&"}, false},
            {{"<<", ">>"}, false},
            {{"+", "-"}, false},
            {{"*", "/", "//", "%"}, false},
        };
        static const std::vector<OpLevel> java = {
            {{"||"}, false},
            {{"&&"}, false},
            {{"|"}, false},
            {{"^"}, false},
            {{"&"}, false},
            {{"==", "!="}, false},
            {{"<", ">", "<=", ">="}, false},
            {{"<<", ">>", ">>>"}, false},
            {{"+", "-"}, false},
            {{"*", "/", "%"}, false},
        };
        return lang_ == Language::Python ? python : java;
    }

    AstNode parse_expression() { return parse_binary(0); }

    AstNode parse_binary(std::size_t level) {
        if (level >= levels().size()) return parse_unary();
        const OpLevel& lv = levels()[level];
        std::size_t start = pos_;
        AstNode left = parse_binary(level + 1);
        while (!eof()) {
            const CodeToken& t = peek();
            bool kind_ok = lv.keywords ? t.kind == TokenKind::Keyword
                                       : t.kind == TokenKind::Operator;
            if (!kind_ok || std::find(lv.ops.begin(), lv.ops.end(), t.text) ==
                                lv.ops.end())
                break;
            AstNode n = make_node("binop", start);
            n.text = t.text;
            advance();
            n.children.push_back(std::move(left));
            n.children.push_back(parse_binary(level + 1));
            close(n);
            left = std::move(n);
        }
        return left;
    }

    AstNode parse_unary() {
        std::size_t start = pos_;
        const CodeToken& t = peek();
        bool is_unary =
            (t.kind == TokenKind::Operator &&
             (t.text == "-" || t.text == "+" || t.text == "~" || t.text == "!" ||
              t.text == "++" || t.text == "--")) ||
            (lang_ == Language::Python && t.kind == TokenKind::Keyword &&
             t.text == "not");
        if (is_unary) {
            AstNode n = make_node("unaryop", start);
            n.text = t.text;
            advance();
            n.children.push_back(parse_unary());
            close(n);
            return n;
        }
        if (lang_ == Language::Python) {
            // power binds tighter than unary on the left, looser on the right
            AstNode base = parse_postfix();
            if (!eof() && peek().kind == TokenKind::Operator && peek().text == "**") {
                AstNode n = make_node("binop", start);
                n.text = "**";
                advance();
                n.children.push_back(std::move(base));
                n.children.push_back(parse_unary());
                close(n);
                return n;
            }
            return base;
        }
        return parse_postfix();
    }

    AstNode parse_postfix() {
        std::size_t start = pos_;
        AstNode node = parse_primary();
        while (!eof()) {
            const CodeToken& t = peek();
            if (t.text == "(" && t.kind == TokenKind::Punctuation) {
                AstNode call = make_node("call", start);
                call.children.push_back(std::move(node));
                advance();
                if (!eof() && peek().text != ")") {
                    call.children.push_back(parse_expression());
                    while (accept_text(",")) {
                        call.children.push_back(parse_expression());
                    }
                }
                expect_text(")");
                close(call);
                node = std::move(call);
                continue;
            }
            if (t.text == "." && node.kind == "name" &&
                peek(1).kind == TokenKind::Identifier) {
                advance();
                const CodeToken& attr = advance();
                node.text += "." + attr.text;
                node.span_end = static_cast<int>(pos_);
                continue;
            }
            if (t.text == "[" || t.text == ".")
                throw ParseBail{};  // subscripts / attribute-of-call: opaque
            if (lang_ == Language::Java && t.kind == TokenKind::Operator &&
                (t.text == "++" || t.text == "--")) {
                AstNode n = make_node("unaryop", start);
                n.text = t.text;
                advance();
                n.children.push_back(std::move(node));
                close(n);
                node = std::move(n);
                continue;
            }
            break;
        }
        return node;
    }

    AstNode parse_primary() {
        if (eof()) throw ParseBail{};
        const CodeToken& t = peek();
        if (t.kind == TokenKind::Identifier) return parse_name_leaf();
        if (t.kind == TokenKind::Literal) {
            std::size_t start = pos_;
            return leaf("literal", advance().text, start, pos_);
        }
        if (t.kind == TokenKind::Keyword &&
            (t.text == "True" || t.text == "False" || t.text == "None" ||
             t.text == "this")) {
            std::size_t start = pos_;
            std::string text = advance().text;
            return leaf(t.text == "this" ? "name" : "literal", std::move(text),
                        start, pos_);
        }
        if (t.text == "(") {
            advance();
            AstNode inner = parse_expression();
            expect_text(")");
            return inner;
        }
        throw ParseBail{};  // lists, dicts, lambdas, new, casts, ...
    }
};

}  // namespace

AstNode parse_subset(const std::vector<CodeToken>& tokens, Language lang) {
    return Parser(tokens, lang).run();
}

std::size_t ast_size(const AstNode& node) {
    std::size_t n = 1;
    for (const AstNode& c : node.children) n += ast_size(c);
    return n;
}

}  // namespace fbeval::code
