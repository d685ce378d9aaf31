// Test-only RLP construction for the [address, nonce] list, written as
// payload-first assembly so it shares no code path with src/eth.cpp.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace sescan::testing {

inline std::vector<uint8_t> rlp_address_nonce_ref(const std::array<uint8_t, 20>& addr,
                                                  uint64_t nonce) {
    std::vector<uint8_t> payload;
    payload.push_back(0x80 + 20);
    payload.insert(payload.end(), addr.begin(), addr.end());

    std::vector<uint8_t> nonce_be;
    for (uint64_t v = nonce; v != 0; v >>= 8) {
        nonce_be.insert(nonce_be.begin(), static_cast<uint8_t>(v & 0xff));
    }
    if (nonce_be.empty()) {
        payload.push_back(0x80);
    } else if (nonce_be.size() == 1 && nonce_be[0] < 0x80) {
        payload.push_back(nonce_be[0]);
    } else {
        payload.push_back(static_cast<uint8_t>(0x80 + nonce_be.size()));
        payload.insert(payload.end(), nonce_be.begin(), nonce_be.end());
    }

    std::vector<uint8_t> out;
    out.push_back(static_cast<uint8_t>(0xc0 + payload.size()));  // payload <= 30
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

}  // namespace sescan::testing
