#include "sescan/scanner.hpp"

#include <algorithm>
#include <tuple>

namespace sescan::scanner {

std::string_view to_string(AttackClass c) {
    switch (c) {
        case AttackClass::a1: return "A1";
        case AttackClass::a2: return "A2";
        case AttackClass::a3: return "A3";
        case AttackClass::a4: return "A4";
        case AttackClass::a5: return "A5";
        case AttackClass::a6: return "A6";
    }
    return "A1";
}

std::optional<AttackClass> attack_class_from(std::string_view s) {
    for (AttackClass c : kAllClasses) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::info: return "info";
        case Severity::medium: return "medium";
        case Severity::high: return "high";
    }
    return "info";
}

std::optional<Severity> severity_from(std::string_view s) {
    if (s == "info") return Severity::info;
    if (s == "medium") return Severity::medium;
    if (s == "high") return Severity::high;
    return std::nullopt;
}

ScanFileResult scan(std::string_view source, const ScanConfig& config) {
    ScanFileResult result;

    TokenizeResult lexed = tokenize(source);
    if (!lexed.ok) {
        result.error = lexed.error;
        return result;
    }

    std::vector<Finding> all;
    auto append = [&all](std::vector<Finding>&& batch) {
        for (auto& f : batch) {
            all.push_back(std::move(f));
        }
    };

    if (config.enabled(AttackClass::a1) || config.enabled(AttackClass::a2)) {
        append(detect_a1_a2(lexed.tokens, config));
    }
    if (config.enabled(AttackClass::a3)) {
        append(detect_a3(lexed.tokens, config));
    }
    if (config.enabled(AttackClass::a4)) {
        append(detect_a4(lexed.tokens, config));
    }
    if (config.enabled(AttackClass::a5) || config.enabled(AttackClass::a6)) {
        append(detect_a5_a6(lexed.tokens, config));
    }

    for (auto& f : all) {
        if (config.enabled(f.attack_class) && f.severity >= config.severity_floor) {
            result.findings.push_back(std::move(f));
        }
    }
    std::sort(result.findings.begin(), result.findings.end(),
              [](const Finding& a, const Finding& b) {
                  return std::tuple(a.span.offset, a.span.length, a.attack_class,
                                    a.severity, a.message) <
                         std::tuple(b.span.offset, b.span.length, b.attack_class,
                                    b.severity, b.message);
              });
    return result;
}

}  // namespace sescan::scanner
