#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sescan/eth.hpp"

namespace sescan::addrkind {

enum class Kind {
    eoa,
    contract_payable,
    contract_nonpayable,
    contract_unknown_payability,
};

std::string_view to_string(Kind k);
std::optional<Kind> kind_from_string(std::string_view s);

class SnapshotError : public std::runtime_error {
public:
    SnapshotError(std::string message, size_t line)
        : std::runtime_error(std::move(message)), line_(line) {}

    size_t line() const { return line_; }

private:
    size_t line_;
};

// Offline knowledge of address kinds. Only snapshots may assert
// contract-nonpayable; code emptiness alone cannot prove payability.
struct AddressKindMap {
    std::map<eth::Address, Kind> entries;
    std::string source_tag;

    std::optional<Kind> lookup(const eth::Address& addr) const {
        auto it = entries.find(addr);
        return it == entries.end() ? std::nullopt : std::optional<Kind>(it->second);
    }
};

// Snapshot lines: `address,kind` with 0x + 40 lowercase hex; `#` comments.
// Throws SnapshotError naming the line on malformed input, unknown kind
// words, or duplicate addresses.
AddressKindMap parse_snapshot(std::string_view text, std::string source_tag);
AddressKindMap load_snapshot(const std::string& path);

// Time-of-check answer from a live node. The kind can change the moment after
// it was read; checked_at records when it was true.
struct NodeAnswer {
    Kind kind = Kind::contract_unknown_payability;  // eoa or contract-unknown-payability
    std::chrono::system_clock::time_point checked_at;
};

// eth_getCode("latest") over JSON-RPC. Never asserts payability.
class NodeClient {
public:
    // endpoint: http://host:port[/path]
    explicit NodeClient(std::string endpoint);

    // nullopt on transport/protocol failure; the scan then proceeds with the
    // address kind unknown.
    std::optional<NodeAnswer> query(const eth::Address& addr);

    const std::string& last_error() const { return last_error_; }

    // exact request body sent on the wire
    static std::string request_body(const eth::Address& addr, int id);

private:
    std::string endpoint_;
    int next_id_ = 1;
    std::string last_error_;
};

}  // namespace sescan::addrkind
