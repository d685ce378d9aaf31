#include "sescan/address_kind.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace sescan::addrkind {
namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_lower_hex(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

}  // namespace

std::string_view to_string(Kind k) {
    switch (k) {
        case Kind::eoa: return "eoa";
        case Kind::contract_payable: return "contract-payable";
        case Kind::contract_nonpayable: return "contract-nonpayable";
        case Kind::contract_unknown_payability: return "contract-unknown-payability";
    }
    return "contract-unknown-payability";
}

std::optional<Kind> kind_from_string(std::string_view s) {
    for (Kind k : {Kind::eoa, Kind::contract_payable, Kind::contract_nonpayable,
                   Kind::contract_unknown_payability}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

AddressKindMap parse_snapshot(std::string_view text, std::string source_tag) {
    AddressKindMap map;
    map.source_tag = std::move(source_tag);

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = strip(line);
        if (line.empty()) {
            continue;
        }

        size_t comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw SnapshotError("expected `address,kind`", line_no);
        }
        std::string_view addr_field = strip(line.substr(0, comma));
        std::string_view kind_field = strip(line.substr(comma + 1));

        if (addr_field.size() != 42 || !addr_field.starts_with("0x") ||
            !is_lower_hex(addr_field.substr(2))) {
            throw SnapshotError(
                "address must be 0x + 40 lowercase hex digits, got '" +
                    std::string(addr_field) + "'",
                line_no);
        }
        auto addr = eth::parse_address(addr_field);
        auto kind = kind_from_string(kind_field);
        if (!kind) {
            throw SnapshotError("unknown kind word '" + std::string(kind_field) + "'",
                                line_no);
        }
        if (!map.entries.emplace(*addr, *kind).second) {
            throw SnapshotError(
                "duplicate address " + std::string(addr_field), line_no);
        }
    }
    return map;
}

AddressKindMap load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnapshotError("cannot open snapshot '" + path + "'", 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_snapshot(buffer.str(), path);
}

NodeClient::NodeClient(std::string endpoint) : endpoint_(std::move(endpoint)) {}

std::string NodeClient::request_body(const eth::Address& addr, int id) {
    // exact wire format; field order matters for byte-stable requests
    return R"({"jsonrpc":"2.0","method":"eth_getCode","params":[")" + eth::to_hex(addr) +
           R"(","latest"],"id":)" + std::to_string(id) + "}";
}

std::optional<NodeAnswer> NodeClient::query(const eth::Address& addr) {
    last_error_.clear();

    // split http://host:port[/path]
    std::string url = endpoint_;
    std::string path = "/";
    size_t scheme = url.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    size_t slash = url.find('/', host_start);
    if (slash != std::string::npos) {
        path = url.substr(slash);
        url = url.substr(0, slash);
    }

    httplib::Client client(url);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(5, 0);

    std::string body = request_body(addr, next_id_++);
    httplib::Result res = client.Post(path, body, "application/json");
    if (!res) {
        last_error_ = "resolver unavailable: " + httplib::to_string(res.error());
        return std::nullopt;
    }
    if (res->status != 200) {
        last_error_ = "resolver unavailable: HTTP " + std::to_string(res->status);
        return std::nullopt;
    }

    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("result") ||
        !parsed["result"].is_string()) {
        last_error_ = "resolver unavailable: malformed JSON-RPC response";
        return std::nullopt;
    }

    std::string code = parsed["result"].get<std::string>();
    NodeAnswer answer;
    answer.checked_at = std::chrono::system_clock::now();
    answer.kind = (code.empty() || code == "0x") ? Kind::eoa
                                                 : Kind::contract_unknown_payability;
    return answer;
}

}  // namespace sescan::addrkind
