#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sescan::scanner {

enum class TokenKind {
    identifier,
    string_literal,
    hex_number,       // all numeric literals
    address_literal,  // 0x + exactly 40 hex digits outside string literals
    punctuation,
    keyword,
    comment,
    other,
};

std::string_view to_string(TokenKind k);

struct Span {
    uint32_t line = 1;    // 1-based
    uint32_t column = 1;  // 1-based, in codepoints
    size_t offset = 0;    // byte offset into the source
    size_t length = 0;    // byte length
};

struct Token {
    TokenKind kind = TokenKind::other;
    std::string text;     // raw source bytes, exactly as written
    std::string decoded;  // string literals: content with escapes resolved, no quotes
    Span span;
};

struct TokenizeResult {
    std::vector<Token> tokens;
    bool ok = true;
    std::string error;  // set when !ok (invalid UTF-8)
};

// Lossless lexing: every non-whitespace byte lands in exactly one token, so
// tokens plus interleaved whitespace reconstruct the source. Unknown
// constructs become `other`; comments are kept. Only invalid UTF-8 fails.
TokenizeResult tokenize(std::string_view source);

}  // namespace sescan::scanner
