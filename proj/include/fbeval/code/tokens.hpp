#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::code {

enum class Language { Java, Python };

Language parse_language(const std::string& name);

enum class TokenKind { Keyword, Identifier, Literal, Operator, Punctuation };

struct CodeToken {
    TokenKind kind = TokenKind::Identifier;
    std::string text;  // never empty
    int line = 1;      // 1-based
    int col = 1;

    bool operator==(const CodeToken& o) const {
        return kind == o.kind && text == o.text;
    }
};

// Synthetic Python block-structure markers, emitted as punctuation.
inline constexpr std::string_view kIndentText = "<indent>";
inline constexpr std::string_view kDedentText = "<dedent>";

class LexError : public ValidationError {
public:
    LexError(int line, int col, const std::string& msg)
        : ValidationError("lex error at " + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// True iff text is in the language's fixed keyword list (Python 3.10
// keywords; Java SE 17 reserved words).
bool is_keyword(std::string_view text, Language lang);

// Comments (and a shebang line) are stripped; Python emits <indent>/<dedent>
// punctuation for block structure. Unterminated strings or block comments
// raise LexError with the position.
std::vector<CodeToken> tokenize(const std::string& source, Language lang);

}  // namespace fbeval::code
