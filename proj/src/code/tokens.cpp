#include "fbeval/code/tokens.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

namespace fbeval::code {

namespace {

// Python 3.10 keyword list (keyword.kwlist).
constexpr std::string_view kPythonKeywords[] = {
    "False",    "None",   "True",    "and",    "as",     "assert", "async",
    "await",    "break",  "class",   "continue", "def",  "del",    "elif",
    "else",     "except", "finally", "for",    "from",   "global", "if",
    "import",   "in",     "is",      "lambda", "nonlocal", "not",  "or",
    "pass",     "raise",  "return",  "try",    "while",  "with",   "yield",
};

// Java SE 17 reserved words (JLS 3.9), including the reserved underscore.
// true/false/null are reserved literals and lex as literals instead.
constexpr std::string_view kJavaKeywords[] = {
    "_",        "abstract", "assert",     "boolean",  "break",     "byte",
    "case",     "catch",    "char",       "class",    "const",     "continue",
    "default",  "do",       "double",     "else",     "enum",      "extends",
    "final",    "finally",  "float",      "for",      "goto",      "if",
    "implements", "import", "instanceof", "int",      "interface", "long",
    "native",   "new",      "package",    "private",  "protected", "public",
    "return",   "short",    "static",     "strictfp", "super",     "switch",
    "synchronized", "this", "throw",      "throws",   "transient", "try",
    "void",     "volatile", "while",
};

constexpr std::string_view kJavaReservedLiterals[] = {"true", "false", "null"};

// Multi-char operators, longest first so greedy matching is correct.
constexpr std::string_view kPythonOperators[] = {
    "**=", "//=", "<<=", ">>=", "!=", "==", "<=", ">=", "->", ":=",
    "+=",  "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "**", "//",
    "<<",  ">>",  "+",   "-",   "*",  "/",  "%",  "<",  ">",  "=",
    "&",   "|",   "^",   "~",
};

constexpr std::string_view kJavaOperators[] = {
    ">>>=", ">>>", "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||",
    "++",   "--",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=",
    "->",   "::",  "<<",  ">>",  "+",  "-",  "*",  "/",  "%",  "=",
    "<",    ">",   "!",   "~",   "&",  "|",  "^",  "?",
};

constexpr std::string_view kPunctuation = "()[]{},:;.@";

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_cont(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
public:
    Lexer(const std::string& src, Language lang) : src_(src), lang_(lang) {}

    std::vector<CodeToken> run() {
        if (lang_ == Language::Python) {
            lex_python();
        } else {
            lex_java();
        }
        return std::move(tokens_);
    }

private:
    const std::string& src_;
    Language lang_;
    std::vector<CodeToken> tokens_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool eof() const { return pos_ >= src_.size(); }
    char peek(std::size_t off = 0) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    bool match(std::string_view s) const {
        return src_.compare(pos_, s.size(), s) == 0;
    }
    void skip(std::size_t n) {
        for (std::size_t i = 0; i < n && !eof(); ++i) advance();
    }

    void emit(TokenKind kind, std::string text, int line, int col) {
        tokens_.push_back({kind, std::move(text), line, col});
    }

    // ---- shared scanners -------------------------------------------------

    void scan_word() {
        int line = line_, col = col_;
        std::size_t start = pos_;
        while (!eof() && ident_cont(static_cast<unsigned char>(peek()))) advance();
        std::string text = src_.substr(start, pos_ - start);
        TokenKind kind = TokenKind::Identifier;
        if (is_keyword(text, lang_)) {
            kind = TokenKind::Keyword;
        } else if (lang_ == Language::Java) {
            for (std::string_view lit : kJavaReservedLiterals)
                if (text == lit) kind = TokenKind::Literal;
        }
        emit(kind, std::move(text), line, col);
    }

    void scan_number() {
        int line = line_, col = col_;
        std::size_t start = pos_;
        bool hex = false;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' ||
                              peek(1) == 'B' || peek(1) == 'o' || peek(1) == 'O')) {
            hex = true;
            advance();
            advance();
        }
        auto num_char = [&](char c) {
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') return true;
            if (hex && std::isxdigit(static_cast<unsigned char>(c))) return true;
            if (!hex && (c == '.' || c == 'e' || c == 'E')) return true;
            if (!hex && (c == '+' || c == '-')) {
                char prev = src_[pos_ - 1];
                return prev == 'e' || prev == 'E';  // exponent sign
            }
            return false;
        };
        while (!eof() && num_char(peek())) advance();
        // type suffixes: Java lLfFdD, Python j/J
        if (!eof() && peek() != '\0' && std::strchr("lLfFdDjJ", peek())) advance();
        emit(TokenKind::Literal, src_.substr(start, pos_ - start), line, col);
    }

    // Quoted string; quote_len is 1 or 3. Raw strings still honor a
    // backslash for termination purposes, matching Python's lexer.
    void scan_quoted(std::size_t quote_len) {
        int line = line_, col = col_;
        std::size_t start = pos_;
        char q = peek();
        std::string closer(quote_len, q);
        skip(quote_len);
        while (!eof()) {
            if (peek() == '\\') {
                skip(2);
                continue;
            }
            if (quote_len == 1 && peek() == '\n') break;  // unterminated
            if (match(closer)) {
                skip(quote_len);
                emit(TokenKind::Literal, src_.substr(start, pos_ - start), line, col);
                return;
            }
            advance();
        }
        throw LexError(line, col, "unterminated string literal");
    }

    bool scan_operator(const std::string_view* ops, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (match(ops[i])) {
                emit(TokenKind::Operator, std::string(ops[i]), line_, col_);
                skip(ops[i].size());
                return true;
            }
        }
        return false;
    }

    // ---- python ----------------------------------------------------------

    void lex_python() {
        std::vector<int> indents{0};
        int bracket_depth = 0;
        bool at_line_start = true;

        while (true) {
            if (at_line_start && bracket_depth == 0) {
                // Measure indentation; skip blank and comment-only lines.
                int width = 0;
                std::size_t scan = pos_;
                while (scan < src_.size() &&
                       (src_[scan] == ' ' || src_[scan] == '\t')) {
                    width = src_[scan] == '\t' ? (width / 8 + 1) * 8 : width + 1;
                    ++scan;
                }
                if (scan >= src_.size()) {
                    skip(scan - pos_);
                    break;
                }
                if (src_[scan] == '\n' || src_[scan] == '\r' || src_[scan] == '#') {
                    while (!eof() && peek() != '\n') advance();
                    if (!eof()) advance();
                    continue;
                }
                skip(scan - pos_);
                if (width > indents.back()) {
                    indents.push_back(width);
                    emit(TokenKind::Punctuation, std::string(kIndentText), line_, col_);
                } else {
                    while (width < indents.back()) {
                        indents.pop_back();
                        emit(TokenKind::Punctuation, std::string(kDedentText), line_,
                             col_);
                    }
                }
                at_line_start = false;
            }
            if (eof()) break;

            char c = peek();
            if (c == '\n') {
                advance();
                if (bracket_depth == 0) at_line_start = true;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                advance();
                continue;
            }
            if (c == '\\' && peek(1) == '\n') {
                skip(2);  // explicit line continuation
                continue;
            }
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            // string prefixes like r'', b"", f""" (at most two prefix chars)
            if (ident_start(static_cast<unsigned char>(c))) {
                std::size_t plen = 0;
                while (plen < 2 && peek(plen) != '\0' &&
                       std::strchr("rRbBuUfF", peek(plen)))
                    ++plen;
                if (plen > 0 && (peek(plen) == '"' || peek(plen) == '\'')) {
                    int line = line_, col = col_;
                    std::size_t start = pos_;
                    skip(plen);
                    std::size_t body = tokens_.size();
                    scan_quoted(match3quote() ? 3 : 1);
                    // fold the prefix into the literal token
                    tokens_[body].text = src_.substr(start, pos_ - start);
                    tokens_[body].line = line;
                    tokens_[body].col = col;
                    continue;
                }
                scan_word();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                scan_number();
                continue;
            }
            if (c == '"' || c == '\'') {
                scan_quoted(match3quote() ? 3 : 1);
                continue;
            }
            if (kPunctuation.find(c) != std::string_view::npos) {
                // ':=' must win over ':' punctuation
                if (c == ':' && peek(1) == '=') {
                    emit(TokenKind::Operator, ":=", line_, col_);
                    skip(2);
                    continue;
                }
                if (c == '(' || c == '[' || c == '{') ++bracket_depth;
                if (c == ')' || c == ']' || c == '}')
                    bracket_depth = std::max(0, bracket_depth - 1);
                emit(TokenKind::Punctuation, std::string(1, c), line_, col_);
                advance();
                continue;
            }
            if (scan_operator(kPythonOperators, std::size(kPythonOperators)))
                continue;
            // Unknown byte: emit as punctuation rather than failing.
            emit(TokenKind::Punctuation, std::string(1, c), line_, col_);
            advance();
        }
        while (indents.size() > 1) {
            indents.pop_back();
            emit(TokenKind::Punctuation, std::string(kDedentText), line_, col_);
        }
    }

    bool match3quote() const {
        char q = peek();
        return peek(1) == q && peek(2) == q;
    }

    // ---- java --------------------------------------------------------------

    void lex_java() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                int line = line_, col = col_;
                skip(2);
                while (!eof() && !match("*/")) advance();
                if (eof()) throw LexError(line, col, "unterminated block comment");
                skip(2);
                continue;
            }
            if (ident_start(static_cast<unsigned char>(c))) {
                scan_word();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                scan_number();
                continue;
            }
            if (c == '"') {
                scan_quoted(match3quote() ? 3 : 1);  // text blocks use """
                continue;
            }
            if (c == '\'') {
                scan_quoted(1);
                continue;
            }
            if (kPunctuation.find(c) != std::string_view::npos && c != ':') {
                emit(TokenKind::Punctuation, std::string(1, c), line_, col_);
                advance();
                continue;
            }
            if (c == ':' && peek(1) != ':') {
                emit(TokenKind::Punctuation, ":", line_, col_);
                advance();
                continue;
            }
            if (scan_operator(kJavaOperators, std::size(kJavaOperators))) continue;
            emit(TokenKind::Punctuation, std::string(1, c), line_, col_);
            advance();
        }
    }
};

}  // namespace

Language parse_language(const std::string& name) {
    if (name == "java" || name == "Java") return Language::Java;
    if (name == "python" || name == "Python") return Language::Python;
    throw ValidationError("unknown language: " + name);
}

bool is_keyword(std::string_view text, Language lang) {
    if (lang == Language::Python)
        return std::find(std::begin(kPythonKeywords), std::end(kPythonKeywords),
                         text) != std::end(kPythonKeywords);
    return std::find(std::begin(kJavaKeywords), std::end(kJavaKeywords), text) !=
           std::end(kJavaKeywords);
}

std::vector<CodeToken> tokenize(const std::string& source, Language lang) {
    return Lexer(source, lang).run();
}

}  // namespace fbeval::code
