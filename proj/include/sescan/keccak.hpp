#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sescan {

using Hash256 = std::array<uint8_t, 32>;

// Keccak-256 with the original 0x01 domain padding (what Ethereum uses),
// not the SHA-3 0x06 variant.
Hash256 keccak256(std::span<const uint8_t> data) noexcept;
Hash256 keccak256(std::string_view text) noexcept;

}  // namespace sescan
