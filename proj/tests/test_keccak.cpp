#include <doctest.h>

#include <random>
#include <string>

#include "oracle/keccak_ref.hpp"
#include "sescan/keccak.hpp"

using sescan::Hash256;
using sescan::keccak256;
using sescan::testing::keccak256_ref;

namespace {

std::string hex(const Hash256& h) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (uint8_t b : h) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

}  // namespace

TEST_CASE("keccak256 empty input") {
    CHECK(hex(keccak256("")) ==
          "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
}

TEST_CASE("keccak256 is deterministic") {
    CHECK(keccak256("some input") == keccak256("some input"));
}

TEST_CASE("keccak256 of foo(uint256) starts with 2fbebd38") {
    Hash256 digest = keccak256("foo(uint256)");
    CHECK(digest[0] == 0x2f);
    CHECK(digest[1] == 0xbe);
    CHECK(digest[2] == 0xbd);
    CHECK(digest[3] == 0x38);
}

TEST_CASE("keccak256 matches the reference at rate boundaries") {
    for (size_t len : {0u, 1u, 135u, 136u, 137u, 271u, 272u, 273u, 512u}) {
        std::string input(len, '\0');
        for (size_t i = 0; i < len; ++i) {
            input[i] = static_cast<char>(i * 131 + 7);
        }
        CAPTURE(len);
        CHECK(keccak256(input) == keccak256_ref(input));
    }
}

TEST_CASE("keccak256 matches the reference on random inputs") {
    std::mt19937_64 rng(0x5e5ca11u);
    for (int i = 0; i < 250; ++i) {
        size_t len = rng() % 513;
        std::string input(len, '\0');
        for (auto& c : input) {
            c = static_cast<char>(rng());
        }
        CHECK(keccak256(input) == keccak256_ref(input));
    }
}
