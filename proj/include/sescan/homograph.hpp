#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sescan::homograph {

class TableError : public std::runtime_error {
public:
    TableError(std::string message, size_t line)
        : std::runtime_error(std::move(message)), line_(line) {}

    size_t line() const { return line_; }

private:
    size_t line_;
};

// Codepoint -> ASCII prototype table. ASCII codepoints implicitly map to
// themselves; entries below U+0080 are rejected by the loader.
class ConfusableMap {
public:
    // Record format: `U+XXXX<TAB>prototype<TAB>comment`, `#` comment lines,
    // optional `# version: <tag>` line. Throws TableError on duplicates,
    // non-ASCII prototypes, or malformed records.
    static ConfusableMap parse(std::string_view table_text);

    static ConfusableMap load_file(const std::string& path);

    // Table compiled into the library (data/confusables.txt).
    static const ConfusableMap& bundled();

    // Prototype for a codepoint: identity for ASCII, table lookup otherwise,
    // nullopt for unmapped non-ASCII.
    std::optional<std::string> prototype(char32_t cp) const;

    const std::map<char32_t, std::string>& entries() const { return entries_; }
    const std::string& version_tag() const { return version_tag_; }

private:
    std::map<char32_t, std::string> entries_;
    std::string version_tag_ = "unversioned";
};

struct SkeletonResult {
    std::string text;                    // meaningful only when ok()
    std::vector<char32_t> unmapped;      // non-ASCII codepoints absent from the map
    bool ok() const { return unmapped.empty(); }
};

// Per-codepoint prototype substitution. No case folding, no Unicode
// normalization: case is significant for EIP-55 text and selectors.
SkeletonResult skeleton(std::string_view s, const ConfusableMap& map);

struct HomographReport {
    bool has_non_ascii = false;
    std::vector<char32_t> unmapped_non_ascii;
    std::optional<std::string> skeleton;     // absent when any codepoint is unmapped
    bool confusable_with_ascii = false;      // skeleton differs from s and is pure ASCII
    std::vector<size_t> offending_positions; // codepoint indices of non-ASCII chars
};

HomographReport analyze_string(std::string_view s, const ConfusableMap& map);

enum class HeaderRelation {
    identical,       // codepoint-equal
    homograph_twin,  // byte-different, skeleton-equal
    distinct,
};

std::string_view to_string(HeaderRelation r);

struct CompareResult {
    HeaderRelation relation = HeaderRelation::distinct;
    bool unmapped_warning = false;  // conservative `distinct` forced by unmapped codepoints
};

CompareResult compare_headers(std::string_view h1, std::string_view h2,
                              const ConfusableMap& map);

}  // namespace sescan::homograph
