#include "sescan/keccak.hpp"

#include <bit>
#include <cstring>

namespace sescan {
namespace {

constexpr unsigned kRate = 136;  // bytes absorbed per permutation at capacity 512

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008};

// lane source index and rotation for the fused rho+pi step, in write order
// of lanes 1..24 of the permuted state
constexpr int kPiLane[24] = {10, 7,  11, 17, 18, 3,  5,  16, 8,  21, 24, 4,
                             15, 23, 19, 13, 12, 2,  20, 14, 22, 9,  6,  1};
constexpr int kRhoOffset[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

inline uint64_t rotl(uint64_t v, int n) {
    return (v << n) | (v >> (64 - n));
}

void keccakf(uint64_t s[25]) {
    uint64_t c[5];
    uint64_t row[5];
    for (int round = 0; round < 24; ++round) {
        // theta
        for (int x = 0; x < 5; ++x) {
            c[x] = s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20];
        }
        for (int x = 0; x < 5; ++x) {
            uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            s[x] ^= d;
            s[x + 5] ^= d;
            s[x + 10] ^= d;
            s[x + 15] ^= d;
            s[x + 20] ^= d;
        }

        // rho + pi
        uint64_t carry = s[1];
        for (int i = 0; i < 24; ++i) {
            int dst = kPiLane[i];
            uint64_t tmp = s[dst];
            s[dst] = rotl(carry, kRhoOffset[i]);
            carry = tmp;
        }

        // chi
        for (int y = 0; y < 25; y += 5) {
            for (int x = 0; x < 5; ++x) {
                row[x] = s[y + x];
            }
            for (int x = 0; x < 5; ++x) {
                s[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
            }
        }

        // iota
        s[0] ^= kRoundConstants[round];
    }
}

inline void absorb_block(uint64_t s[25], const uint8_t* block) {
    uint64_t lane;
    for (int i = 0; i < static_cast<int>(kRate / 8); ++i) {
        std::memcpy(&lane, block + 8 * i, 8);  // little-endian hosts only
        s[i] ^= lane;
    }
    keccakf(s);
}

}  // namespace

Hash256 keccak256(std::span<const uint8_t> data) noexcept {
    static_assert(std::endian::native == std::endian::little);

    uint64_t state[25] = {};
    const uint8_t* p = data.data();
    size_t remaining = data.size();

    while (remaining >= kRate) {
        absorb_block(state, p);
        p += kRate;
        remaining -= kRate;
    }

    uint8_t last[kRate] = {};
    if (remaining > 0) {
        std::memcpy(last, p, remaining);
    }
    last[remaining] ^= 0x01;
    last[kRate - 1] ^= 0x80;
    absorb_block(state, last);

    Hash256 digest;
    std::memcpy(digest.data(), state, digest.size());
    return digest;
}

Hash256 keccak256(std::string_view text) noexcept {
    return keccak256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

}  // namespace sescan
