#include "sescan/homograph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sescan/utf8.hpp"

namespace sescan::homograph {

namespace detail {
// defined in the build-generated translation unit for data/confusables.txt
const char* bundled_confusables_text();
}  // namespace detail

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

bool is_ascii_printable(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= 0x20 && c < 0x7F; });
}

}  // namespace

ConfusableMap ConfusableMap::parse(std::string_view table_text) {
    ConfusableMap map;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= table_text.size()) {
        size_t eol = table_text.find('\n', pos);
        std::string_view line = table_text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? table_text.size() + 1 : eol + 1;

        std::string_view trimmed = strip(line);
        if (trimmed.empty()) {
            continue;
        }
        if (trimmed[0] == '#') {
            constexpr std::string_view kVersionPrefix = "# version:";
            if (trimmed.starts_with(kVersionPrefix)) {
                map.version_tag_ = std::string(strip(trimmed.substr(kVersionPrefix.size())));
            }
            continue;
        }

        size_t tab1 = line.find('\t');
        if (tab1 == std::string_view::npos) {
            throw TableError("expected U+XXXX<TAB>prototype<TAB>comment", line_no);
        }
        size_t tab2 = line.find('\t', tab1 + 1);

        std::string_view cp_field = strip(line.substr(0, tab1));
        // prototype taken verbatim: a lone space is a valid prototype
        std::string_view proto_field = line.substr(
            tab1 + 1, tab2 == std::string_view::npos ? std::string_view::npos : tab2 - tab1 - 1);
        if (tab2 == std::string_view::npos && proto_field.ends_with('\r')) {
            proto_field.remove_suffix(1);
        }

        if (!cp_field.starts_with("U+") || cp_field.size() < 6 || cp_field.size() > 8) {
            throw TableError("bad codepoint field '" + std::string(cp_field) + "'", line_no);
        }
        uint32_t cp = 0;
        auto digits = cp_field.substr(2);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, 16);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || cp > 0x10FFFF) {
            throw TableError("bad codepoint field '" + std::string(cp_field) + "'", line_no);
        }
        if (cp < 0x80) {
            throw TableError("ASCII codepoints map to themselves; remove the entry", line_no);
        }
        std::string prototype(proto_field);
        if (prototype.empty() || !is_ascii_printable(prototype)) {
            throw TableError("prototype must be non-empty printable ASCII", line_no);
        }
        if (!map.entries_.emplace(static_cast<char32_t>(cp), std::move(prototype)).second) {
            throw TableError("duplicate codepoint " + std::string(cp_field), line_no);
        }
    }
    return map;
}

ConfusableMap ConfusableMap::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TableError("cannot open confusable table '" + path + "'", 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

const ConfusableMap& ConfusableMap::bundled() {
    static const ConfusableMap map = parse(detail::bundled_confusables_text());
    return map;
}

std::optional<std::string> ConfusableMap::prototype(char32_t cp) const {
    if (cp < 0x80) {
        return std::string(1, static_cast<char>(cp));
    }
    auto it = entries_.find(cp);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

SkeletonResult skeleton(std::string_view s, const ConfusableMap& map) {
    SkeletonResult result;
    result.text.reserve(s.size());
    size_t pos = 0;
    while (pos < s.size()) {
        char32_t cp = utf8::decode_next(s, pos);
        if (auto proto = map.prototype(cp)) {
            result.text.append(*proto);
        } else if (std::find(result.unmapped.begin(), result.unmapped.end(), cp) ==
                   result.unmapped.end()) {
            result.unmapped.push_back(cp);
        }
    }
    return result;
}

HomographReport analyze_string(std::string_view s, const ConfusableMap& map) {
    HomographReport report;
    std::string skel;
    skel.reserve(s.size());

    size_t pos = 0;
    size_t index = 0;
    while (pos < s.size()) {
        char32_t cp = utf8::decode_next(s, pos);
        if (cp >= 0x80) {
            report.has_non_ascii = true;
            report.offending_positions.push_back(index);
        }
        if (auto proto = map.prototype(cp)) {
            skel.append(*proto);
        } else if (std::find(report.unmapped_non_ascii.begin(), report.unmapped_non_ascii.end(),
                             cp) == report.unmapped_non_ascii.end()) {
            report.unmapped_non_ascii.push_back(cp);
        }
        ++index;
    }

    if (report.unmapped_non_ascii.empty()) {
        report.confusable_with_ascii = report.has_non_ascii && skel != s;
        report.skeleton = std::move(skel);
    }
    return report;
}

std::string_view to_string(HeaderRelation r) {
    switch (r) {
        case HeaderRelation::identical: return "identical";
        case HeaderRelation::homograph_twin: return "homograph_twin";
        case HeaderRelation::distinct: return "distinct";
    }
    return "distinct";
}

CompareResult compare_headers(std::string_view h1, std::string_view h2,
                              const ConfusableMap& map) {
    if (h1 == h2) {
        return {HeaderRelation::identical, false};
    }
    SkeletonResult s1 = skeleton(h1, map);
    SkeletonResult s2 = skeleton(h2, map);
    if (!s1.ok() || !s2.ok()) {
        return {HeaderRelation::distinct, true};
    }
    if (s1.text == s2.text) {
        return {HeaderRelation::homograph_twin, false};
    }
    return {HeaderRelation::distinct, false};
}

}  // namespace sescan::homograph
