// Test-only Keccak-256 reference, kept independent of src/keccak.cpp:
// 5x5 lane state, step-by-step theta/rho/pi/chi/iota, round constants
// produced by the LFSR x^8+x^6+x^5+x^4+1 and rho offsets by the (t+1)(t+2)/2
// walk, so no table is shared with the production code.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sescan::testing {

std::array<uint8_t, 32> keccak256_ref(const uint8_t* data, size_t len);
std::array<uint8_t, 32> keccak256_ref(std::string_view text);

}  // namespace sescan::testing
