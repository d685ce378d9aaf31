#include "sescan/eth.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace sescan::eth {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

bool is_identifier_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_identifier_char(char c) {
    return is_identifier_start(c) || (c >= '0' && c <= '9');
}

bool is_valid_identifier(std::string_view s) {
    if (s.empty() || !is_identifier_start(s[0])) {
        return false;
    }
    return std::all_of(s.begin() + 1, s.end(), is_identifier_char);
}

// uintN / intN / bytesN size suffix; empty suffix handled by caller.
std::optional<unsigned> parse_size_suffix(std::string_view digits) {
    if (digits.empty() || digits.size() > 3 || digits[0] == '0') {
        return std::nullopt;
    }
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::string> canonicalize_elementary(std::string_view type) {
    if (type == "address" || type == "bool" || type == "bytes" || type == "string") {
        return std::string(type);
    }
    if (type == "uint") return std::string("uint256");
    if (type == "int") return std::string("int256");
    if (type == "byte") return std::string("bytes1");
    if (type.starts_with("uint") || type.starts_with("int")) {
        size_t prefix_len = type.starts_with("uint") ? 4 : 3;
        auto size = parse_size_suffix(type.substr(prefix_len));
        if (size && *size >= 8 && *size <= 256 && *size % 8 == 0) {
            return std::string(type);
        }
        return std::nullopt;
    }
    if (type.starts_with("bytes")) {
        auto size = parse_size_suffix(type.substr(5));
        if (size && *size >= 1 && *size <= 32) {
            return std::string(type);
        }
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::string to_hex(const Address& addr) {
    std::string out = "0x";
    out.reserve(42);
    for (uint8_t b : addr.bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xf]);
    }
    return out;
}

std::optional<Address> parse_address(std::string_view text) {
    if (text.size() != 42 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
        return std::nullopt;
    }
    Address addr;
    for (size_t i = 0; i < 20; ++i) {
        int hi = hex_value(text[2 + 2 * i]);
        int lo = hex_value(text[3 + 2 * i]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        addr.bytes[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return addr;
}

std::string to_hex(const Selector& sel) {
    std::string out = "0x";
    out.reserve(10);
    for (uint8_t b : sel.bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xf]);
    }
    return out;
}

std::optional<Selector> parse_selector(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) {
        text.remove_prefix(2);
    }
    if (text.size() != 8) {
        return std::nullopt;
    }
    Selector sel;
    for (size_t i = 0; i < 4; ++i) {
        int hi = hex_value(text[2 * i]);
        int lo = hex_value(text[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        sel.bytes[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return sel;
}

std::optional<std::string> canonicalize_abi_type(std::string_view type) {
    // split off one array suffix chain: base[N][M]...
    size_t bracket = type.find('[');
    std::string_view base = type.substr(0, bracket);
    auto canonical = canonicalize_elementary(base);
    if (!canonical) {
        return std::nullopt;
    }
    if (bracket == std::string_view::npos) {
        return canonical;
    }
    std::string_view suffix = type.substr(bracket);
    while (!suffix.empty()) {
        if (suffix[0] != '[') {
            return std::nullopt;
        }
        size_t close = suffix.find(']');
        if (close == std::string_view::npos || close < 2) {
            return std::nullopt;  // `[]` (dynamic) and `[` without size rejected
        }
        std::string_view digits = suffix.substr(1, close - 1);
        if (digits[0] == '0' ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return std::nullopt;
        }
        canonical->push_back('[');
        canonical->append(digits);
        canonical->push_back(']');
        suffix.remove_prefix(close + 1);
    }
    return canonical;
}

std::string FunctionHeader::canonical() const {
    std::string out = name;
    out.push_back('(');
    for (size_t i = 0; i < arg_types.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out.append(arg_types[i]);
    }
    out.push_back(')');
    return out;
}

FunctionHeader FunctionHeader::parse(std::string_view header) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };

    std::string_view rest = trim(header);
    size_t open = rest.find('(');
    if (open == std::string_view::npos || rest.back() != ')') {
        throw HeaderError("function header must be name(type,...)", std::string(rest));
    }

    FunctionHeader result;
    std::string_view name = trim(rest.substr(0, open));
    if (!is_valid_identifier(name)) {
        throw HeaderError("invalid function name: '" + std::string(name) + "'", std::string(name));
    }
    result.name = std::string(name);

    std::string_view args = rest.substr(open + 1, rest.size() - open - 2);
    if (args.find('(') != std::string_view::npos) {
        throw HeaderError("tuple argument types are not supported", std::string(args));
    }
    if (!trim(args).empty()) {
        size_t pos = 0;
        while (true) {
            size_t comma = args.find(',', pos);
            std::string_view piece = trim(args.substr(pos, comma - pos));
            auto canonical = canonicalize_abi_type(piece);
            if (!canonical) {
                throw HeaderError("unknown ABI type: '" + std::string(piece) + "'",
                                  std::string(piece));
            }
            result.arg_types.push_back(std::move(*canonical));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
    }
    if (result.arg_types.size() > 16) {
        throw HeaderError("more than 16 argument types",
                          std::to_string(result.arg_types.size()) + " args");
    }
    return result;
}

Selector selector_of_header_bytes(std::string_view raw_header) {
    Hash256 digest = keccak256(raw_header);
    Selector sel;
    std::copy_n(digest.begin(), 4, sel.bytes.begin());
    return sel;
}

Selector compute_selector(const FunctionHeader& header) {
    return selector_of_header_bytes(header.canonical());
}

Selector compute_selector(std::string_view header) {
    return compute_selector(FunctionHeader::parse(header));
}

std::string_view to_string(ChecksumClass c) {
    switch (c) {
        case ChecksumClass::valid_eip55: return "valid-eip55";
        case ChecksumClass::all_lower: return "all-lower";
        case ChecksumClass::all_upper: return "all-upper";
        case ChecksumClass::invalid_checksum: return "invalid-checksum";
        case ChecksumClass::malformed: return "malformed";
    }
    return "malformed";
}

ChecksummedAddressText eip55_encode(const Address& addr) {
    std::string lower = to_hex(addr).substr(2);
    Hash256 digest = keccak256(lower);

    std::string text = "0x";
    text.reserve(42);
    for (size_t i = 0; i < 40; ++i) {
        char c = lower[i];
        uint8_t nibble = (i % 2 == 0) ? (digest[i / 2] >> 4) : (digest[i / 2] & 0xf);
        if (c >= 'a' && c <= 'f' && nibble >= 8) {
            c = static_cast<char>(c - 'a' + 'A');
        }
        text.push_back(c);
    }
    return ChecksummedAddressText{std::move(text), ChecksumClass::valid_eip55, addr};
}

ChecksummedAddressText eip55_classify(std::string_view text) {
    auto addr = parse_address(text);
    if (!addr || text[1] != 'x') {  // canonical prefix is lowercase 0x
        return ChecksummedAddressText{std::string(text), ChecksumClass::malformed, std::nullopt};
    }

    ChecksummedAddressText result;
    result.text = std::string(text);
    result.address = addr;

    // valid-eip55 first: for letterless addresses the checksummed form and the
    // lowercase form coincide, and the round-trip contract wins.
    if (eip55_encode(*addr).text == text) {
        result.case_class = ChecksumClass::valid_eip55;
        return result;
    }

    bool has_upper = std::any_of(text.begin() + 2, text.end(),
                                 [](char c) { return c >= 'A' && c <= 'F'; });
    bool has_lower = std::any_of(text.begin() + 2, text.end(),
                                 [](char c) { return c >= 'a' && c <= 'f'; });
    if (!has_upper) {
        result.case_class = ChecksumClass::all_lower;
    } else if (!has_lower) {
        result.case_class = ChecksumClass::all_upper;
    } else {
        result.case_class = ChecksumClass::invalid_checksum;
    }
    return result;
}

std::vector<uint8_t> rlp_encode_address_nonce(const Address& sender, Nonce nonce) {
    // minimal big-endian nonce bytes; zero is the empty string
    uint8_t nonce_bytes[8];
    size_t nonce_len = 0;
    for (uint64_t v = nonce.value; v != 0; v >>= 8) {
        ++nonce_len;
    }
    for (size_t i = 0; i < nonce_len; ++i) {
        nonce_bytes[i] = static_cast<uint8_t>(nonce.value >> (8 * (nonce_len - 1 - i)));
    }

    // nonce item: single byte < 0x80 encodes as itself, else 0x80+len prefix
    bool single_byte_nonce = nonce_len == 1 && nonce_bytes[0] < 0x80;
    size_t nonce_item_len = single_byte_nonce ? 1 : 1 + nonce_len;
    size_t payload_len = 21 + nonce_item_len;  // 0x94 + 20 address bytes + nonce item

    std::vector<uint8_t> out;
    out.reserve(1 + payload_len);
    out.push_back(static_cast<uint8_t>(0xc0 + payload_len));  // payload <= 30 < 56
    out.push_back(0x94);
    out.insert(out.end(), sender.bytes.begin(), sender.bytes.end());
    if (single_byte_nonce) {
        out.push_back(nonce_bytes[0]);
    } else {
        out.push_back(static_cast<uint8_t>(0x80 + nonce_len));
        out.insert(out.end(), nonce_bytes, nonce_bytes + nonce_len);
    }
    return out;
}

Address derive_create_address(const Address& sender, Nonce nonce) {
    std::vector<uint8_t> rlp = rlp_encode_address_nonce(sender, nonce);
    Hash256 digest = keccak256(std::span<const uint8_t>(rlp.data(), rlp.size()));
    Address derived;
    std::copy_n(digest.begin() + 12, 20, derived.bytes.begin());
    return derived;
}

}  // namespace sescan::eth
