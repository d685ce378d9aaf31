#include "sescan/utf8.hpp"

namespace sescan::utf8 {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool is_continuation(uint8_t b) {
    return (b & 0xC0) == 0x80;
}

}  // namespace

char32_t decode_next(std::string_view text, size_t& pos) {
    uint8_t lead = static_cast<uint8_t>(text[pos]);
    if (lead < 0x80) {
        ++pos;
        return lead;
    }

    size_t len;
    char32_t cp;
    char32_t min_value;
    if ((lead & 0xE0) == 0xC0) {
        len = 2;
        cp = lead & 0x1F;
        min_value = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        len = 3;
        cp = lead & 0x0F;
        min_value = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        len = 4;
        cp = lead & 0x07;
        min_value = 0x10000;
    } else {
        ++pos;
        return kReplacement;
    }

    if (pos + len > text.size()) {
        ++pos;
        return kReplacement;
    }
    for (size_t i = 1; i < len; ++i) {
        uint8_t b = static_cast<uint8_t>(text[pos + i]);
        if (!is_continuation(b)) {
            ++pos;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++pos;
        return kReplacement;
    }
    pos += len;
    return cp;
}

std::optional<size_t> find_invalid(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size()) {
        size_t start = pos;
        if (decode_next(text, pos) == kReplacement) {
            // U+FFFD encoded in the input itself is fine; a one-byte advance
            // on a non-ASCII lead marks real damage
            if (pos == start + 1 && static_cast<uint8_t>(text[start]) >= 0x80) {
                return start;
            }
        }
    }
    return std::nullopt;
}

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    size_t pos = 0;
    while (pos < text.size()) {
        out.push_back(decode_next(text, pos));
    }
    return out;
}

std::string encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view cps) {
    std::string out;
    for (char32_t cp : cps) {
        out += encode(cp);
    }
    return out;
}

}  // namespace sescan::utf8
