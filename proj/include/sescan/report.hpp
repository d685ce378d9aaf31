#pragma once

#include <map>
#include <string>
#include <vector>

#include "sescan/findings.hpp"

namespace sescan::report {

inline constexpr std::string_view kSchemaVersion = "1";

struct FileFinding {
    std::string file;
    scanner::Finding finding;
};

struct FileError {
    std::string file;
    std::string error;
};

// effective scan configuration, echoed into the report; worker count is an
// execution detail and deliberately not part of it (reports are byte-identical
// across worker counts)
struct ConfigEcho {
    std::vector<std::string> classes;  // enabled, in A1..A6 order
    std::string severity_floor;
    std::string glob;
    std::string snapshot;  // path or empty
    std::string rpc;       // endpoint or empty
};

struct Report {
    std::string schema_version = std::string(kSchemaVersion);
    size_t scanned_files = 0;
    std::vector<FileFinding> findings;           // sorted by (file, span, class)
    std::map<std::string, size_t> per_class_counts;  // "A1".."A6" -> count
    std::vector<FileError> errors;               // sorted by file
    ConfigEcho config_echo;
};

// single JSON document, keys sorted, 2-space indent, trailing newline
std::string to_json(const Report& report);

}  // namespace sescan::report
