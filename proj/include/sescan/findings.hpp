#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sescan/token.hpp"

namespace sescan::scanner {

enum class AttackClass { a1, a2, a3, a4, a5, a6 };

constexpr std::array<AttackClass, 6> kAllClasses = {
    AttackClass::a1, AttackClass::a2, AttackClass::a3,
    AttackClass::a4, AttackClass::a5, AttackClass::a6};

std::string_view to_string(AttackClass c);                    // "A1".."A6"
std::optional<AttackClass> attack_class_from(std::string_view);

enum class Severity { info, medium, high };

std::string_view to_string(Severity s);
std::optional<Severity> severity_from(std::string_view);

struct Evidence {
    std::string literal;                        // raw source slice at the finding span
    std::optional<std::string> decoded;         // literal content after escape decoding
    std::optional<std::string> address_kind;
    std::optional<std::string> checksum_class;
    std::optional<std::string> canonical_form;  // e.g. the valid EIP-55 rendering
    std::optional<std::string> counterpart;     // paired literal (case divergence)
    std::optional<std::string> skeleton;
    std::optional<std::string> selector_literal;
    std::optional<std::string> selector_skeleton;
    std::optional<std::string> local_function;  // declared header matching a tampered selector
    std::vector<std::string> unmapped;          // U+XXXX codepoints outside the map
};

struct Finding {
    AttackClass attack_class = AttackClass::a1;
    Severity severity = Severity::info;
    Span span;
    std::string message;
    Evidence evidence;
};

}  // namespace sescan::scanner
