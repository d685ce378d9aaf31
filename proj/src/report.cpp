#include "sescan/report.hpp"

#include <json.hpp>

namespace sescan::report {
namespace {

using nlohmann::json;

json to_json(const scanner::Evidence& e) {
    json out;
    out["literal"] = e.literal;
    auto put = [&out](const char* key, const std::optional<std::string>& value) {
        if (value) {
            out[key] = *value;
        }
    };
    put("decoded", e.decoded);
    put("address_kind", e.address_kind);
    put("checksum_class", e.checksum_class);
    put("canonical_form", e.canonical_form);
    put("counterpart", e.counterpart);
    put("skeleton", e.skeleton);
    put("selector_literal", e.selector_literal);
    put("selector_skeleton", e.selector_skeleton);
    put("local_function", e.local_function);
    if (!e.unmapped.empty()) {
        out["unmapped"] = e.unmapped;
    }
    return out;
}

json to_json(const FileFinding& ff) {
    const scanner::Finding& f = ff.finding;
    json out;
    out["file"] = ff.file;
    out["attack_class"] = std::string(scanner::to_string(f.attack_class));
    out["severity"] = std::string(scanner::to_string(f.severity));
    out["span"] = {{"line", f.span.line},
                   {"column", f.span.column},
                   {"offset", f.span.offset},
                   {"length", f.span.length}};
    out["message"] = f.message;
    out["evidence"] = to_json(f.evidence);
    return out;
}

}  // namespace

std::string to_json(const Report& report) {
    json out;
    out["schema_version"] = report.schema_version;
    out["scanned_files"] = report.scanned_files;
    out["findings"] = json::array();
    for (const auto& ff : report.findings) {
        out["findings"].push_back(to_json(ff));
    }
    out["per_class_counts"] = json::object();
    for (const auto& [cls, count] : report.per_class_counts) {
        out["per_class_counts"][cls] = count;
    }
    out["errors"] = json::array();
    for (const auto& fe : report.errors) {
        out["errors"].push_back({{"file", fe.file}, {"error", fe.error}});
    }
    out["config_echo"] = {{"classes", report.config_echo.classes},
                          {"severity_floor", report.config_echo.severity_floor},
                          {"glob", report.config_echo.glob},
                          {"snapshot", report.config_echo.snapshot},
                          {"rpc", report.config_echo.rpc}};
    return out.dump(2) + "\n";
}

}  // namespace sescan::report
