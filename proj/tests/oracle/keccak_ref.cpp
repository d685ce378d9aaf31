#include "oracle/keccak_ref.hpp"

#include <cstring>

namespace sescan::testing {
namespace {

constexpr uint64_t rotl(uint64_t v, unsigned n) {
    return n == 0 ? v : (v << n) | (v >> (64 - n));
}

// rc(t): bit stream of the degree-8 LFSR over GF(2).
bool rc_bit(int t) {
    if (t % 255 == 0) {
        return true;
    }
    uint8_t r = 1;
    for (int i = 1; i <= t % 255; ++i) {
        bool high = (r & 0x80) != 0;
        r = static_cast<uint8_t>(r << 1);
        if (high) {
            r ^= 0x71;  // taps 8,6,5,4 -> x^8+x^6+x^5+x^4+1
        }
    }
    return (r & 1) != 0;
}

uint64_t round_constant(int round) {
    uint64_t rc = 0;
    for (int j = 0; j <= 6; ++j) {
        if (rc_bit(j + 7 * round)) {
            rc |= uint64_t{1} << ((1 << j) - 1);
        }
    }
    return rc;
}

void keccak_f1600(uint64_t a[5][5]) {
    for (int round = 0; round < 24; ++round) {
        // theta
        uint64_t c[5];
        uint64_t d[5];
        for (int x = 0; x < 5; ++x) {
            c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
        }
        for (int x = 0; x < 5; ++x) {
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
        }
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                a[x][y] ^= d[x];
            }
        }

        // rho + pi, offsets generated by the (x,y) -> (y, 2x+3y) walk
        uint64_t b[5][5];
        b[0][0] = a[0][0];
        {
            int x = 1;
            int y = 0;
            uint64_t lane = a[x][y];
            for (int t = 0; t < 24; ++t) {
                int nx = y;
                int ny = (2 * x + 3 * y) % 5;
                uint64_t next = a[nx][ny];
                b[nx][ny] = rotl(lane, static_cast<unsigned>(((t + 1) * (t + 2) / 2) % 64));
                lane = next;
                x = nx;
                y = ny;
            }
        }

        // chi
        for (int y = 0; y < 5; ++y) {
            for (int x = 0; x < 5; ++x) {
                a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);
            }
        }

        // iota
        a[0][0] ^= round_constant(round);
    }
}

}  // namespace

std::array<uint8_t, 32> keccak256_ref(const uint8_t* data, size_t len) {
    constexpr size_t rate = 136;  // 1600/8 - 2*32

    uint64_t state[5][5] = {};
    uint8_t block[rate];

    // absorb full blocks
    while (len >= rate) {
        for (size_t i = 0; i < rate; ++i) {
            size_t lane = i / 8;
            state[lane % 5][lane / 5] ^= uint64_t{data[i]} << (8 * (i % 8));
        }
        keccak_f1600(state);
        data += rate;
        len -= rate;
    }

    // final block with original Keccak padding (0x01 ... 0x80), not SHA-3's 0x06
    std::memset(block, 0, rate);
    if (len > 0) {
        std::memcpy(block, data, len);
    }
    block[len] ^= 0x01;
    block[rate - 1] ^= 0x80;
    for (size_t i = 0; i < rate; ++i) {
        size_t lane = i / 8;
        state[lane % 5][lane / 5] ^= uint64_t{block[i]} << (8 * (i % 8));
    }
    keccak_f1600(state);

    std::array<uint8_t, 32> digest{};
    for (size_t i = 0; i < 32; ++i) {
        size_t lane = i / 8;
        digest[i] = static_cast<uint8_t>(state[lane % 5][lane / 5] >> (8 * (i % 8)));
    }
    return digest;
}

std::array<uint8_t, 32> keccak256_ref(std::string_view text) {
    return keccak256_ref(reinterpret_cast<const uint8_t*>(text.data()), text.size());
}

}  // namespace sescan::testing
