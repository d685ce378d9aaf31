#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sescan/keccak.hpp"

namespace sescan::eth {

// 20-byte account identifier. Canonical text form is 0x + 40 lowercase hex.
struct Address {
    std::array<uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;
};

std::string to_hex(const Address& addr);  // 0x + lowercase
std::optional<Address> parse_address(std::string_view text);  // case-insensitive hex

// 4-byte function selector, printed as 0x + 8 lowercase hex digits.
struct Selector {
    std::array<uint8_t, 4> bytes{};

    auto operator<=>(const Selector&) const = default;
    uint32_t as_uint32() const {
        return (uint32_t{bytes[0]} << 24) | (uint32_t{bytes[1]} << 16) |
               (uint32_t{bytes[2]} << 8) | uint32_t{bytes[3]};
    }
};

std::string to_hex(const Selector& sel);
std::optional<Selector> parse_selector(std::string_view text);  // 8 hex digits, 0x optional

class HeaderError : public std::runtime_error {
public:
    HeaderError(std::string message, std::string token)
        : std::runtime_error(std::move(message)), offending_token_(std::move(token)) {}

    const std::string& offending_token() const { return offending_token_; }

private:
    std::string offending_token_;
};

// Canonical function signature: `name(type1,type2,...)`, no whitespace,
// aliases normalized (uint -> uint256, int -> int256, byte -> bytes1),
// at most 16 argument types.
struct FunctionHeader {
    std::string name;
    std::vector<std::string> arg_types;  // canonical ABI names

    std::string canonical() const;

    // Throws HeaderError naming the offending token. Accepts whitespace around
    // punctuation; rejects tuples and unknown types.
    static FunctionHeader parse(std::string_view header);
};

// Canonicalize one ABI type name; nullopt for unknown/unsupported types.
// Supported: elementary types (uintN/intN/address/bool/bytesN), `bytes`,
// `string`, and fixed-size arrays of these.
std::optional<std::string> canonicalize_abi_type(std::string_view type);

// First 4 bytes of keccak256 over arbitrary header bytes. Used for evidence on
// tampered (non-ASCII) headers that cannot pass FunctionHeader validation.
Selector selector_of_header_bytes(std::string_view raw_header);

// keccak256(canonical header)[0..4)
Selector compute_selector(const FunctionHeader& header);
Selector compute_selector(std::string_view header);  // parse + compute

// EIP-55 mixed-case classification of an address rendering.
enum class ChecksumClass {
    valid_eip55,
    all_lower,
    all_upper,
    invalid_checksum,
    malformed,
};

std::string_view to_string(ChecksumClass c);

struct ChecksummedAddressText {
    std::string text;
    ChecksumClass case_class = ChecksumClass::malformed;
    std::optional<Address> address;  // present unless malformed
};

// Mixed-case EIP-55 form: hex letter i is uppercased iff nibble i of
// keccak256(lowercase hex without 0x) >= 8.
ChecksummedAddressText eip55_encode(const Address& addr);
ChecksummedAddressText eip55_classify(std::string_view text);

// Account nonce; RLP-encodes as minimal big-endian bytes (0 -> empty string).
struct Nonce {
    uint64_t value = 0;
};

// RLP of the two-item list [20-byte address string, minimal nonce bytes].
std::vector<uint8_t> rlp_encode_address_nonce(const Address& sender, Nonce nonce);

// CREATE rule: last 20 bytes of keccak256(rlp([sender, nonce])).
Address derive_create_address(const Address& sender, Nonce nonce);

}  // namespace sescan::eth
