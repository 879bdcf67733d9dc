#include <doctest.h>

#include "fbeval/code/tokens.hpp"

using namespace fbeval::code;

namespace {

std::vector<std::string> texts(const std::vector<CodeToken>& toks) {
    std::vector<std::string> out;
    for (const auto& t : toks) out.push_back(t.text);
    return out;
}

std::vector<TokenKind> kinds(const std::vector<CodeToken>& toks) {
    std::vector<TokenKind> out;
    for (const auto& t : toks) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST_CASE("empty input yields no tokens") {
    CHECK(tokenize("", Language::Python).empty());
    CHECK(tokenize("", Language::Java).empty());
    CHECK(tokenize("   \n\t\n", Language::Python).empty());
}

TEST_CASE("python simple assignment") {
    auto toks = tokenize("x = 1", Language::Python);
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].kind == TokenKind::Identifier);
    CHECK(toks[0].text == "x");
    CHECK(toks[1].kind == TokenKind::Operator);
    CHECK(toks[1].text == "=");
    CHECK(toks[2].kind == TokenKind::Literal);
    CHECK(toks[2].text == "1");
}

TEST_CASE("java declaration with keyword") {
    auto toks = tokenize("int x = 1;", Language::Java);
    REQUIRE(toks.size() == 5);
    CHECK(kinds(toks) == std::vector<TokenKind>{
                             TokenKind::Keyword, TokenKind::Identifier,
                             TokenKind::Operator, TokenKind::Literal,
                             TokenKind::Punctuation});
    CHECK(texts(toks) == std::vector<std::string>{"int", "x", "=", "1", ";"});
}

TEST_CASE("python indent and dedent are emitted as punctuation") {
    auto toks = tokenize("def f():\n    return 1\n", Language::Python);
    auto t = texts(toks);
    CHECK(t == std::vector<std::string>{"def", "f", "(", ")", ":", "<indent>",
                                        "return", "1", "<dedent>"});
    CHECK(toks[5].kind == TokenKind::Punctuation);
    CHECK(toks.back().kind == TokenKind::Punctuation);
}

TEST_CASE("nested blocks balance indents") {
    auto toks = tokenize(
        "def f(x):\n"
        "    if x:\n"
        "        return 1\n"
        "    return 0\n",
        Language::Python);
    int depth = 0, max_depth = 0;
    for (const auto& t : toks) {
        if (t.text == "<indent>") ++depth;
        if (t.text == "<dedent>") --depth;
        max_depth = std::max(max_depth, depth);
        CHECK(depth >= 0);
    }
    CHECK(depth == 0);
    CHECK(max_depth == 2);
}

TEST_CASE("comments and shebang are stripped") {
    auto py = tokenize("#!/usr/bin/env python\n# comment\nx = 1  # trailing\n",
                       Language::Python);
    CHECK(texts(py) == std::vector<std::string>{"x", "=", "1"});
    auto java = tokenize("// line\n/* block\nspanning */ x = 1;", Language::Java);
    CHECK(texts(java) == std::vector<std::string>{"x", "=", "1", ";"});
}

TEST_CASE("string literals are single tokens") {
    auto py = tokenize("s = 'a b' + \"c\" + f\"x{y}\" + '''tri\nple'''",
                       Language::Python);
    CHECK(py[2].kind == TokenKind::Literal);
    CHECK(py[2].text == "'a b'");
    CHECK(py[6].text == "f\"x{y}\"");
    CHECK(py[8].text == "'''tri\nple'''");

    auto java = tokenize("String s = \"a \\\" b\";", Language::Java);
    CHECK(java[3].kind == TokenKind::Literal);
    CHECK(java[3].text == "\"a \\\" b\"");
}

TEST_CASE("unterminated strings and comments raise lex errors with position") {
    CHECK_THROWS_AS(tokenize("x = 'abc", Language::Python), LexError);
    CHECK_THROWS_AS(tokenize("x = \"abc\ny\"", Language::Python), LexError);
    CHECK_THROWS_AS(tokenize("int x; /* oops", Language::Java), LexError);
    try {
        tokenize("y = 1\nx = 'abc", Language::Python);
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() == 5);
    }
}

TEST_CASE("keyword classification follows the language lists") {
    CHECK(is_keyword("def", Language::Python));
    CHECK(is_keyword("True", Language::Python));
    CHECK_FALSE(is_keyword("def", Language::Java));
    CHECK(is_keyword("int", Language::Java));
    CHECK_FALSE(is_keyword("int", Language::Python));

    // Java reserved literals lex as literals, not keywords
    auto toks = tokenize("boolean b = true;", Language::Java);
    CHECK(toks[3].kind == TokenKind::Literal);
    // Python True is a keyword by the 3.10 list
    auto py = tokenize("b = True", Language::Python);
    CHECK(py[2].kind == TokenKind::Keyword);
}

TEST_CASE("multi-char operators lex greedily") {
    auto py = tokenize("a **= b // c != d", Language::Python);
    CHECK(texts(py) == std::vector<std::string>{"a", "**=", "b", "//", "c",
                                                "!=", "d"});
    auto java = tokenize("a >>>= b >>> c;", Language::Java);
    CHECK(texts(java) ==
          std::vector<std::string>{"a", ">>>=", "b", ">>>", "c", ";"});
}

TEST_CASE("numbers with suffixes and bases") {
    auto java = tokenize("long x = 0xFFL; double d = 1.5e-3d;", Language::Java);
    CHECK(java[3].text == "0xFFL");
    CHECK(java[8].text == "1.5e-3d");
    auto py = tokenize("x = 0b1010 + 1_000 + .5j", Language::Python);
    CHECK(py[2].text == "0b1010");
    CHECK(py[4].text == "1_000");
    CHECK(py[6].text == ".5j");
}

TEST_CASE("brackets suppress python indentation handling") {
    auto toks = tokenize("x = f(1,\n      2)\ny = 3\n", Language::Python);
    for (const auto& t : toks) {
        CHECK(t.text != "<indent>");
        CHECK(t.text != "<dedent>");
    }
}

TEST_CASE("token positions are 1-based line and column") {
    auto toks = tokenize("x = 1\n  y = 2\n", Language::Python);
    CHECK(toks[0].line == 1);
    CHECK(toks[0].col == 1);
    // y sits on line 2 after the indent token
    bool found = false;
    for (const auto& t : toks)
        if (t.text == "y") {
            CHECK(t.line == 2);
            CHECK(t.col == 3);
            found = true;
        }
    CHECK(found);
}
