#include "sescan/token.hpp"

#include <array>
#include <string_view>
#include <unordered_set>

#include "sescan/utf8.hpp"

namespace sescan::scanner {
namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract",  "address",   "anonymous", "as",        "assembly",  "bool",
    "break",     "bytes",     "calldata",  "constant",  "constructor", "continue",
    "contract",  "delete",    "do",        "else",      "emit",      "enum",
    "event",     "external",  "fallback",  "false",     "for",       "function",
    "if",        "immutable", "import",    "indexed",   "interface", "internal",
    "is",        "library",   "mapping",   "memory",    "modifier",  "new",
    "override",  "payable",   "pragma",    "private",   "public",    "pure",
    "receive",   "return",    "returns",   "revert",    "storage",   "string",
    "struct",    "true",      "try",       "type",      "unchecked", "using",
    "view",      "virtual",   "while",
};

// uint/int/bytes with a numeric width are keywords too (uint256, bytes32, ...)
bool is_sized_type_keyword(std::string_view word) {
    auto all_digits = [](std::string_view s) {
        if (s.empty()) return true;  // bare uint/int/bytes
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    if (word.starts_with("uint")) return all_digits(word.substr(4));
    if (word.starts_with("int")) return all_digits(word.substr(3));
    if (word.starts_with("bytes")) return all_digits(word.substr(5));
    return word == "byte";
}

constexpr std::array<std::string_view, 3> kPunct3 = {"<<=", ">>=", "**="};
constexpr std::array<std::string_view, 19> kPunct2 = {
    "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=",
    "%=", "^=", "|=", "&=", "=>", "->", "++", "--", "**"};

bool is_identifier_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_identifier_body(char c) {
    return is_identifier_start(c) || (c >= '0' && c <= '9');
}

bool is_hex_digit(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

struct Cursor {
    std::string_view source;
    size_t pos = 0;
    uint32_t line = 1;
    uint32_t column = 1;

    bool done() const { return pos >= source.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < source.size() ? source[pos + ahead] : '\0';
    }

    // advance over [pos, end) keeping line/column (codepoints) up to date
    void advance_to(size_t end) {
        while (pos < end) {
            size_t step_start = pos;
            char32_t cp = utf8::decode_next(source, pos);
            (void)step_start;
            if (cp == U'\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    }
};

// string literal body scan; stops before the closing quote or at EOL/EOF
std::string decode_string_body(std::string_view body) {
    std::string out;
    out.reserve(body.size());
    size_t i = 0;
    while (i < body.size()) {
        char c = body[i];
        if (c != '\\' || i + 1 >= body.size()) {
            out.push_back(c);
            ++i;
            continue;
        }
        char esc = body[i + 1];
        switch (esc) {
            case 'n': out.push_back('\n'); i += 2; break;
            case 't': out.push_back('\t'); i += 2; break;
            case 'r': out.push_back('\r'); i += 2; break;
            case 'b': out.push_back('\b'); i += 2; break;
            case 'f': out.push_back('\f'); i += 2; break;
            case 'v': out.push_back('\v'); i += 2; break;
            case '0': out.push_back('\0'); i += 2; break;
            case '\\': case '\'': case '"':
                out.push_back(esc);
                i += 2;
                break;
            case 'x':
                if (i + 3 < body.size() && is_hex_digit(body[i + 2]) &&
                    is_hex_digit(body[i + 3])) {
                    out.push_back(static_cast<char>((hex_value(body[i + 2]) << 4) |
                                                    hex_value(body[i + 3])));
                    i += 4;
                } else {
                    out.push_back(esc);
                    i += 2;
                }
                break;
            case 'u':
                if (i + 5 < body.size() && is_hex_digit(body[i + 2]) &&
                    is_hex_digit(body[i + 3]) && is_hex_digit(body[i + 4]) &&
                    is_hex_digit(body[i + 5])) {
                    char32_t cp = static_cast<char32_t>(
                        (hex_value(body[i + 2]) << 12) | (hex_value(body[i + 3]) << 8) |
                        (hex_value(body[i + 4]) << 4) | hex_value(body[i + 5]));
                    out += utf8::encode(cp);
                    i += 6;
                } else {
                    out.push_back(esc);
                    i += 2;
                }
                break;
            default:
                out.push_back(esc);  // unknown escape kept literally
                i += 2;
                break;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(TokenKind k) {
    switch (k) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::string_literal: return "string-literal";
        case TokenKind::hex_number: return "hex-number";
        case TokenKind::address_literal: return "address-literal";
        case TokenKind::punctuation: return "punctuation";
        case TokenKind::keyword: return "keyword";
        case TokenKind::comment: return "comment";
        case TokenKind::other: return "other";
    }
    return "other";
}

TokenizeResult tokenize(std::string_view source) {
    TokenizeResult result;
    if (auto bad = utf8::find_invalid(source)) {
        result.ok = false;
        result.error = "invalid UTF-8 at byte offset " + std::to_string(*bad);
        return result;
    }

    Cursor cur{source};
    while (!cur.done()) {
        char c = cur.peek();

        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.advance_to(cur.pos + 1);
            continue;
        }

        Token token;
        token.span.line = cur.line;
        token.span.column = cur.column;
        token.span.offset = cur.pos;
        size_t start = cur.pos;
        size_t end = start;

        if (c == '/' && cur.peek(1) == '/') {
            end = source.find('\n', start);
            end = end == std::string_view::npos ? source.size() : end;
            token.kind = TokenKind::comment;
        } else if (c == '/' && cur.peek(1) == '*') {
            size_t close = source.find("*/", start + 2);
            end = close == std::string_view::npos ? source.size() : close + 2;
            token.kind = TokenKind::comment;
        } else if (c == '"' || c == '\'') {
            // single-line literal; unterminated strings end at EOL
            size_t i = start + 1;
            while (i < source.size() && source[i] != c && source[i] != '\n') {
                i += (source[i] == '\\' && i + 1 < source.size() && source[i + 1] != '\n')
                         ? 2
                         : 1;
            }
            bool closed = i < source.size() && source[i] == c;
            end = closed ? i + 1 : i;
            token.kind = TokenKind::string_literal;
            token.decoded = decode_string_body(
                source.substr(start + 1, end - start - 1 - (closed ? 1 : 0)));
        } else if (is_digit(c)) {
            if (c == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X')) {
                size_t i = start + 2;
                while (i < source.size() && (is_hex_digit(source[i]) || source[i] == '_')) {
                    ++i;
                }
                end = i;
                std::string_view digits = source.substr(start + 2, end - start - 2);
                token.kind = (digits.size() == 40 &&
                              digits.find('_') == std::string_view::npos)
                                 ? TokenKind::address_literal
                                 : TokenKind::hex_number;
            } else {
                size_t i = start;
                bool seen_dot = false;
                while (i < source.size()) {
                    char d = source[i];
                    if (is_digit(d) || d == '_') {
                        ++i;
                    } else if (d == '.' && !seen_dot && i + 1 < source.size() &&
                               is_digit(source[i + 1])) {
                        seen_dot = true;
                        ++i;
                    } else if ((d == 'e' || d == 'E') && i + 1 < source.size() &&
                               (is_digit(source[i + 1]) ||
                                ((source[i + 1] == '+' || source[i + 1] == '-') &&
                                 i + 2 < source.size() && is_digit(source[i + 2])))) {
                        i += source[i + 1] == '+' || source[i + 1] == '-' ? 2 : 1;
                    } else {
                        break;
                    }
                }
                end = i;
                token.kind = TokenKind::hex_number;
            }
        } else if (is_identifier_start(c) || static_cast<uint8_t>(c) >= 0x80) {
            // non-ASCII joins identifier runs so homograph identifiers stay whole
            size_t i = start;
            while (i < source.size() &&
                   (is_identifier_body(source[i]) ||
                    static_cast<uint8_t>(source[i]) >= 0x80)) {
                ++i;
            }
            end = i;
            std::string_view word = source.substr(start, end - start);
            token.kind = (kKeywords.contains(word) || is_sized_type_keyword(word))
                             ? TokenKind::keyword
                             : TokenKind::identifier;
        } else if (c >= 0x21 && c <= 0x7E) {
            std::string_view rest = source.substr(start);
            size_t len = 1;
            for (auto op : kPunct3) {
                if (rest.starts_with(op)) {
                    len = 3;
                    break;
                }
            }
            if (len == 1) {
                for (auto op : kPunct2) {
                    if (rest.starts_with(op)) {
                        len = 2;
                        break;
                    }
                }
            }
            end = start + len;
            token.kind = TokenKind::punctuation;
        } else {
            end = start + 1;  // control bytes and the like
            token.kind = TokenKind::other;
        }

        token.text = std::string(source.substr(start, end - start));
        token.span.length = end - start;
        cur.advance_to(end);
        result.tokens.push_back(std::move(token));
    }
    return result;
}

}  // namespace sescan::scanner
