#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sescan/address_kind.hpp"
#include "sescan/findings.hpp"
#include "sescan/homograph.hpp"
#include "sescan/token.hpp"

namespace sescan::scanner {

struct ScanConfig {
    const homograph::ConfusableMap* confusable_map = nullptr;  // default: bundled
    addrkind::AddressKindMap address_kinds;
    std::array<bool, 6> enabled_classes = {true, true, true, true, true, true};
    Severity severity_floor = Severity::medium;

    bool enabled(AttackClass c) const { return enabled_classes[static_cast<size_t>(c)]; }
    const homograph::ConfusableMap& map() const {
        return confusable_map ? *confusable_map : homograph::ConfusableMap::bundled();
    }
};

// Hard-coded value-transfer receivers (A1 when the snapshot knows the address
// is a non-payable contract, A2 when it is an EOA or unknown).
std::vector<Finding> detect_a1_a2(const std::vector<Token>& tokens, const ScanConfig& config);

// EIP-55 misuse: invalid-checksum literals, string-level address comparison,
// case-divergent renderings of one address.
std::vector<Finding> detect_a3(const std::vector<Token>& tokens, const ScanConfig& config);

// Homograph string literals in branching conditions.
std::vector<Finding> detect_a4(const std::vector<Token>& tokens, const ScanConfig& config);

// Tampered inter-contract call headers; escalates to A6 when a declared
// function matches the tampered selector.
std::vector<Finding> detect_a5_a6(const std::vector<Token>& tokens, const ScanConfig& config);

struct ScanFileResult {
    std::vector<Finding> findings;
    std::optional<std::string> error;  // file-level failure (invalid UTF-8)
};

// tokenize + enabled detectors; findings sorted by (span, class) and filtered
// by severity_floor. Pure function of (source, config).
ScanFileResult scan(std::string_view source, const ScanConfig& config);

}  // namespace sescan::scanner
