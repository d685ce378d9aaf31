#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sescan::utf8 {

// Strict decoder: rejects overlong forms, surrogates, and values > U+10FFFF.
// On malformed input returns U+FFFD and advances one byte.
char32_t decode_next(std::string_view text, size_t& pos);

// Byte offset of the first invalid sequence, or nullopt if well formed.
std::optional<size_t> find_invalid(std::string_view text);

std::u32string decode(std::string_view text);  // lenient, U+FFFD for bad bytes
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

}  // namespace sescan::utf8
