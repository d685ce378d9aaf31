#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sescan/eth.hpp"
#include "sescan/scanner.hpp"

namespace sescan::scanner {
namespace {

constexpr size_t kNone = static_cast<size_t>(-1);

// comment-free view over the token stream; detectors match on structure,
// comments are handled separately
struct SigView {
    const std::vector<Token>* all = nullptr;
    std::vector<size_t> index;

    explicit SigView(const std::vector<Token>& tokens) : all(&tokens) {
        index.reserve(tokens.size());
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i].kind != TokenKind::comment) {
                index.push_back(i);
            }
        }
    }

    size_t size() const { return index.size(); }
    const Token& tok(size_t si) const { return (*all)[index[si]]; }

    bool is_punct(size_t si, std::string_view text) const {
        return si < size() && tok(si).kind == TokenKind::punctuation && tok(si).text == text;
    }
    bool is_word(size_t si, std::string_view text) const {
        return si < size() &&
               (tok(si).kind == TokenKind::identifier || tok(si).kind == TokenKind::keyword) &&
               tok(si).text == text;
    }

    // si at an opener; returns the matching closer index or kNone
    size_t match_open(size_t si) const {
        static const std::map<std::string_view, std::string_view> kPairs = {
            {"(", ")"}, {"{", "}"}, {"[", "]"}};
        auto pair = kPairs.find(tok(si).text);
        if (pair == kPairs.end()) {
            return kNone;
        }
        int depth = 0;
        for (size_t j = si; j < size(); ++j) {
            if (is_punct(j, pair->first)) {
                ++depth;
            } else if (is_punct(j, pair->second)) {
                if (--depth == 0) {
                    return j;
                }
            }
        }
        return kNone;
    }

    bool is_open(size_t si) const {
        return is_punct(si, "(") || is_punct(si, "[") || is_punct(si, "{");
    }
    bool is_close(size_t si) const {
        return is_punct(si, ")") || is_punct(si, "]") || is_punct(si, "}");
    }
};

bool is_boundary_punct(const Token& t) {
    return t.kind == TokenKind::punctuation &&
           (t.text == ";" || t.text == "," || t.text == "=" || t.text == "==" ||
            t.text == "!=" || t.text == "&&" || t.text == "||" || t.text == "?" ||
            t.text == ":" || t.text == "return");
}

// sig-indices of string literals inside one operand of a comparison operator
void collect_operand_strings(const SigView& sig, size_t op, bool rightward,
                             std::set<size_t>& out) {
    int depth = 0;
    if (rightward) {
        for (size_t j = op + 1; j < sig.size(); ++j) {
            if (sig.is_open(j)) {
                ++depth;
            } else if (sig.is_close(j)) {
                if (--depth < 0) break;
            } else if (depth == 0 && is_boundary_punct(sig.tok(j))) {
                break;
            } else if (sig.tok(j).kind == TokenKind::string_literal) {
                out.insert(j);
            }
        }
    } else {
        for (size_t j = op; j-- > 0;) {
            if (sig.is_close(j)) {
                ++depth;
            } else if (sig.is_open(j)) {
                if (--depth < 0) break;
            } else if (depth == 0 && is_boundary_punct(sig.tok(j))) {
                break;
            } else if (sig.tok(j).kind == TokenKind::string_literal) {
                out.insert(j);
            }
        }
    }
}

std::string codepoint_label(char32_t cp) {
    static const char* hex = "0123456789ABCDEF";
    std::string out = "U+";
    int width = cp > 0xFFFF ? 6 : 4;
    for (int shift = (width - 1) * 4; shift >= 0; shift -= 4) {
        out.push_back(hex[(cp >> shift) & 0xF]);
    }
    return out;
}

std::vector<std::string> codepoint_labels(const std::vector<char32_t>& cps) {
    std::vector<std::string> out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        out.push_back(codepoint_label(cp));
    }
    return out;
}

// declared `function name(types...)` with a computable canonical selector
struct DeclaredFunction {
    std::string canonical;
    std::string name;
    eth::Selector selector;
};

std::vector<DeclaredFunction> declared_functions(const SigView& sig) {
    std::vector<DeclaredFunction> out;
    for (size_t si = 0; si + 2 < sig.size(); ++si) {
        if (!sig.is_word(si, "function") || sig.tok(si).kind != TokenKind::keyword) {
            continue;
        }
        const Token& name_tok = sig.tok(si + 1);
        if (name_tok.kind != TokenKind::identifier || !sig.is_punct(si + 2, "(")) {
            continue;
        }
        size_t close = sig.match_open(si + 2);
        if (close == kNone) {
            continue;
        }

        eth::FunctionHeader header;
        header.name = name_tok.text;
        bool computable = true;

        size_t param_start = si + 3;
        while (computable && param_start < close) {
            // one parameter: type tokens, then optional location/name junk
            const Token& base = sig.tok(param_start);
            if (base.kind != TokenKind::keyword && base.kind != TokenKind::identifier) {
                computable = false;
                break;
            }
            std::string type_text = base.text;
            size_t j = param_start + 1;
            while (j + 2 < close && sig.is_punct(j, "[") &&
                   sig.tok(j + 1).kind == TokenKind::hex_number && sig.is_punct(j + 2, "]")) {
                type_text += "[" + sig.tok(j + 1).text + "]";
                j += 3;
            }
            auto canonical_type = eth::canonicalize_abi_type(type_text);
            if (!canonical_type) {
                computable = false;  // user-defined type; selector unknowable here
                break;
            }
            header.arg_types.push_back(std::move(*canonical_type));

            // skip to the comma separating parameters (depth harmless: types
            // with brackets were consumed above, nothing else nests here)
            while (j < close && !sig.is_punct(j, ",")) {
                ++j;
            }
            param_start = j + 1;
        }
        if (computable && header.arg_types.size() <= 16) {
            DeclaredFunction fn;
            fn.canonical = header.canonical();
            fn.name = header.name;
            fn.selector = eth::compute_selector(header);
            out.push_back(std::move(fn));
        }
    }
    return out;
}

std::string_view kind_label(std::optional<addrkind::Kind> kind) {
    if (!kind) {
        return "unknown";
    }
    switch (*kind) {
        case addrkind::Kind::eoa: return "eoa-at-snapshot";
        case addrkind::Kind::contract_payable: return "contract-payable";
        case addrkind::Kind::contract_nonpayable: return "contract-nonpayable";
        case addrkind::Kind::contract_unknown_payability: return "contract-unknown-payability";
    }
    return "unknown";
}

}  // namespace

std::vector<Finding> detect_a1_a2(const std::vector<Token>& tokens, const ScanConfig& config) {
    SigView sig(tokens);
    std::vector<Finding> findings;

    // identifier -> address literal it is assigned from (first assignment wins)
    std::map<std::string, const Token*> bindings;
    for (size_t si = 0; si + 2 < sig.size(); ++si) {
        if (sig.tok(si).kind == TokenKind::identifier && sig.is_punct(si + 1, "=") &&
            sig.tok(si + 2).kind == TokenKind::address_literal) {
            bindings.emplace(sig.tok(si).text, &sig.tok(si + 2));
        }
    }

    auto resolve_receiver = [&](size_t before_dot) -> const Token* {
        if (before_dot >= sig.size()) {
            return nullptr;
        }
        const Token& t = sig.tok(before_dot);
        if (t.kind == TokenKind::address_literal) {
            return &t;
        }
        if (t.kind == TokenKind::identifier) {
            auto it = bindings.find(t.text);
            return it == bindings.end() ? nullptr : it->second;
        }
        if (sig.is_punct(before_dot, ")")) {
            // payable(X) / address(X) wrapper with a single token inside
            int depth = 0;
            size_t open = kNone;
            for (size_t j = before_dot + 1; j-- > 0;) {
                if (sig.is_punct(j, ")")) {
                    ++depth;
                } else if (sig.is_punct(j, "(")) {
                    if (--depth == 0) {
                        open = j;
                        break;
                    }
                }
            }
            if (open != kNone && before_dot - open == 2) {
                return resolve_receiver(open + 1);
            }
        }
        return nullptr;
    };

    for (size_t si = 1; si < sig.size(); ++si) {
        const Token& t = sig.tok(si);
        if (t.kind != TokenKind::identifier || !sig.is_punct(si - 1, ".")) {
            continue;
        }

        bool value_transfer = false;
        if ((t.text == "transfer" || t.text == "send") && sig.is_punct(si + 1, "(")) {
            value_transfer = true;
        } else if (t.text == "call") {
            if (sig.is_punct(si + 1, "{")) {  // call{value: ...}(...)
                size_t close = sig.match_open(si + 1);
                for (size_t j = si + 2; j < close && close != kNone; ++j) {
                    if (sig.is_word(j, "value")) {
                        value_transfer = true;
                        break;
                    }
                }
            } else if (sig.is_punct(si + 1, ".") && sig.is_word(si + 2, "value")) {
                value_transfer = true;  // legacy call.value(...)(...)
            }
        }
        if (!value_transfer || si < 2) {
            continue;
        }

        const Token* literal = resolve_receiver(si - 2);
        if (!literal) {
            continue;  // receiver is not a hard-coded address
        }
        auto addr = eth::parse_address(literal->text);
        if (!addr) {
            continue;
        }
        auto kind = config.address_kinds.lookup(*addr);

        Finding f;
        f.span = literal->span;
        f.evidence.literal = literal->text;
        f.evidence.address_kind = std::string(kind_label(kind));
        if (kind == addrkind::Kind::contract_nonpayable) {
            f.attack_class = AttackClass::a1;
            f.severity = Severity::high;
            f.message = "value transfer (." + t.text + ") to hard-coded address " +
                        literal->text +
                        ", which is a known non-payable contract: the transfer always "
                        "reverts and freezes the calling transaction";
        } else if (kind == addrkind::Kind::contract_payable) {
            continue;  // can accept value; hard-coding alone is not the attack
        } else {
            f.attack_class = AttackClass::a2;
            f.severity = Severity::medium;
            f.message = "value transfer (." + t.text + ") to hard-coded address " +
                        literal->text + " (" + std::string(kind_label(kind)) +
                        "): whoever controls it can deploy a non-payable smart contract "
                        "at the pre-calculated address and make every withdrawal revert";
        }
        findings.push_back(std::move(f));
    }
    return findings;
}

std::vector<Finding> detect_a3(const std::vector<Token>& tokens, const ScanConfig& config) {
    (void)config;
    SigView sig(tokens);
    std::vector<Finding> findings;

    // (i) mixed-case address literals that fail the checksum
    for (size_t si = 0; si < sig.size(); ++si) {
        const Token& t = sig.tok(si);
        if (t.kind != TokenKind::address_literal) {
            continue;
        }
        auto classified = eth::eip55_classify(t.text);
        if (classified.case_class == eth::ChecksumClass::invalid_checksum) {
            Finding f;
            f.attack_class = AttackClass::a3;
            f.severity = Severity::high;
            f.span = t.span;
            f.message = "address literal " + t.text +
                        " has mixed case but fails the EIP-55 checksum; it does not "
                        "denote the address its casing suggests";
            f.evidence.literal = t.text;
            f.evidence.checksum_class = std::string(eth::to_string(classified.case_class));
            f.evidence.canonical_form = eth::eip55_encode(*classified.address).text;
            findings.push_back(std::move(f));
        }
    }

    // (ii) string-level address comparison: string equality is case-sensitive,
    // EVM address equality is not
    std::set<size_t> flagged;
    for (size_t si = 0; si < sig.size(); ++si) {
        if (!sig.is_punct(si, "==") && !sig.is_punct(si, "!=")) {
            continue;
        }
        std::set<size_t> operand_strings;
        collect_operand_strings(sig, si, false, operand_strings);
        collect_operand_strings(sig, si, true, operand_strings);
        for (size_t sj : operand_strings) {
            if (!flagged.insert(sj).second) {
                continue;
            }
            const Token& s = sig.tok(sj);
            auto addr = eth::parse_address(s.decoded);
            if (!addr) {
                continue;
            }
            auto classified = eth::eip55_classify(s.decoded);
            Finding f;
            f.attack_class = AttackClass::a3;
            f.severity = Severity::high;
            f.span = s.span;
            f.message = "address compared as a string: equality is sensitive to the "
                        "EIP-55 letter case of " + s.decoded +
                        " while EVM address comparison is not, so visually equal "
                        "addresses can fail this check";
            f.evidence.literal = s.text;
            f.evidence.decoded = s.decoded;
            f.evidence.checksum_class = std::string(eth::to_string(classified.case_class));
            if (classified.address) {
                f.evidence.canonical_form = eth::eip55_encode(*classified.address).text;
            }
            findings.push_back(std::move(f));
        }
    }

    // (iii) one address written with two different casings in the same file
    std::map<std::string, std::vector<const Token*>> by_address;
    for (size_t si = 0; si < sig.size(); ++si) {
        const Token& t = sig.tok(si);
        if (t.kind != TokenKind::address_literal) {
            continue;
        }
        auto addr = eth::parse_address(t.text);
        if (addr) {
            by_address[eth::to_hex(*addr)].push_back(&t);
        }
    }
    for (const auto& [lower, occurrences] : by_address) {
        std::vector<const Token*> distinct;
        for (const Token* t : occurrences) {
            bool seen = std::any_of(distinct.begin(), distinct.end(),
                                    [&](const Token* d) { return d->text == t->text; });
            if (!seen) {
                distinct.push_back(t);
            }
        }
        for (size_t a = 0; a + 1 < distinct.size(); ++a) {
            for (size_t b = a + 1; b < distinct.size(); ++b) {
                Finding f;
                f.attack_class = AttackClass::a3;
                f.severity = Severity::medium;
                f.span = distinct[b]->span;
                f.message = "address " + lower + " is written with two different casings (" +
                            distinct[a]->text + " vs " + distinct[b]->text +
                            "); at most one can be EIP-55 valid, and string-level "
                            "comparisons will treat them as different";
                f.evidence.literal = distinct[b]->text;
                f.evidence.counterpart = distinct[a]->text;
                findings.push_back(std::move(f));
            }
        }
    }
    return findings;
}

std::vector<Finding> detect_a4(const std::vector<Token>& tokens, const ScanConfig& config) {
    const homograph::ConfusableMap& map = config.map();
    SigView sig(tokens);
    std::vector<Finding> findings;

    // branch context: inside if/while/require/assert parens, or an operand of ==/!=
    std::set<size_t> branch_strings;
    for (size_t si = 0; si < sig.size(); ++si) {
        bool branch_head = ((sig.tok(si).kind == TokenKind::keyword &&
                             (sig.tok(si).text == "if" || sig.tok(si).text == "while")) ||
                            sig.is_word(si, "require") || sig.is_word(si, "assert"));
        if (branch_head && sig.is_punct(si + 1, "(")) {
            size_t close = sig.match_open(si + 1);
            if (close != kNone) {
                for (size_t j = si + 2; j < close; ++j) {
                    if (sig.tok(j).kind == TokenKind::string_literal) {
                        branch_strings.insert(j);
                    }
                }
            }
        }
        if (sig.is_punct(si, "==") || sig.is_punct(si, "!=")) {
            collect_operand_strings(sig, si, false, branch_strings);
            collect_operand_strings(sig, si, true, branch_strings);
        }
    }

    for (size_t si = 0; si < sig.size(); ++si) {
        const Token& t = sig.tok(si);
        if (t.kind != TokenKind::string_literal) {
            continue;
        }
        auto report = homograph::analyze_string(t.decoded, map);
        if (!report.has_non_ascii) {
            continue;
        }

        Finding f;
        f.attack_class = AttackClass::a4;
        f.span = t.span;
        f.evidence.literal = t.text;
        f.evidence.decoded = t.decoded;
        f.evidence.skeleton = report.skeleton;
        f.evidence.unmapped = codepoint_labels(report.unmapped_non_ascii);

        if (branch_strings.contains(si)) {
            if (report.confusable_with_ascii) {
                f.severity = Severity::high;
                f.message = "branch condition compares against a homograph string that "
                            "looks like \"" + *report.skeleton +
                            "\" but has different codepoints; an attacker-supplied "
                            "look-alike value will not match what the reader expects";
            } else {
                f.severity = Severity::medium;
                f.message = "branch condition compares against a string with non-ASCII "
                            "codepoints outside the confusable table (" +
                            (f.evidence.unmapped.empty() ? std::string("?")
                                                         : f.evidence.unmapped.front()) +
                            "...); review it manually";
            }
        } else {
            f.severity = Severity::info;
            f.message = "string literal contains non-ASCII codepoints outside any "
                        "branching condition";
        }
        findings.push_back(std::move(f));
    }

    // homographs in comments cannot execute; hygiene note only
    for (const Token& t : tokens) {
        if (t.kind != TokenKind::comment) {
            continue;
        }
        auto report = homograph::analyze_string(t.text, map);
        if (report.has_non_ascii) {
            Finding f;
            f.attack_class = AttackClass::a4;
            f.severity = Severity::info;
            f.span = t.span;
            f.message = "comment contains non-ASCII codepoints";
            f.evidence.literal = t.text;
            f.evidence.skeleton = report.skeleton;
            f.evidence.unmapped = codepoint_labels(report.unmapped_non_ascii);
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

std::vector<Finding> detect_a5_a6(const std::vector<Token>& tokens, const ScanConfig& config) {
    const homograph::ConfusableMap& map = config.map();
    SigView sig(tokens);
    std::vector<Finding> findings;

    std::vector<DeclaredFunction> declared = declared_functions(sig);

    // ICC header sites: first string argument of signature-encoding idioms
    std::vector<size_t> header_sites;
    for (size_t si = 0; si + 1 < sig.size(); ++si) {
        if (sig.is_word(si, "encodeWithSignature") && sig.is_punct(si + 1, "(") &&
            si + 2 < sig.size() && sig.tok(si + 2).kind == TokenKind::string_literal) {
            header_sites.push_back(si + 2);
        }
        // bytes4(keccak256("header")) and bytes4(keccak256(bytes("header")))
        if (sig.is_word(si, "keccak256") && sig.is_punct(si + 1, "(") && si >= 2 &&
            sig.is_punct(si - 1, "(") && sig.is_word(si - 2, "bytes4")) {
            size_t close = sig.match_open(si + 1);
            for (size_t j = si + 2; j < close && close != kNone; ++j) {
                if (sig.tok(j).kind == TokenKind::string_literal) {
                    header_sites.push_back(j);
                    break;
                }
            }
        }
    }
    std::sort(header_sites.begin(), header_sites.end());
    header_sites.erase(std::unique(header_sites.begin(), header_sites.end()),
                       header_sites.end());

    for (size_t si : header_sites) {
        const Token& t = sig.tok(si);
        auto report = homograph::analyze_string(t.decoded, map);

        if (!report.has_non_ascii) {
            try {
                eth::FunctionHeader::parse(t.decoded);
            } catch (const eth::HeaderError& e) {
                Finding f;
                f.attack_class = AttackClass::a5;
                f.severity = Severity::info;
                f.span = t.span;
                f.message = std::string("inter-contract call header does not parse (") +
                            e.what() + "); its selector may not match any function";
                f.evidence.literal = t.text;
                f.evidence.decoded = t.decoded;
                findings.push_back(std::move(f));
            }
            continue;
        }

        Finding f;
        f.span = t.span;
        f.evidence.literal = t.text;
        f.evidence.decoded = t.decoded;

        if (!report.confusable_with_ascii) {
            f.attack_class = AttackClass::a5;
            f.severity = Severity::info;
            f.message = "inter-contract call header contains non-ASCII codepoints "
                        "outside the confusable table and cannot name a real function";
            f.evidence.unmapped = codepoint_labels(report.unmapped_non_ascii);
            findings.push_back(std::move(f));
            continue;
        }

        const std::string& skeleton = *report.skeleton;
        eth::Selector sel_literal = eth::selector_of_header_bytes(t.decoded);
        eth::Selector sel_skeleton = eth::selector_of_header_bytes(skeleton);
        f.evidence.skeleton = skeleton;
        f.evidence.selector_literal = eth::to_hex(sel_literal);
        f.evidence.selector_skeleton = eth::to_hex(sel_skeleton);

        const DeclaredFunction* mined = nullptr;
        for (const auto& fn : declared) {
            if (fn.selector == sel_literal) {
                mined = &fn;
                break;
            }
        }
        const DeclaredFunction* skeleton_target = nullptr;
        std::string skeleton_name = skeleton.substr(0, skeleton.find('('));
        for (const auto& fn : declared) {
            if (fn.name == skeleton_name) {
                skeleton_target = &fn;
                break;
            }
        }

        if (mined && skeleton_target && mined->canonical != skeleton_target->canonical) {
            f.attack_class = AttackClass::a6;
            f.severity = Severity::high;
            f.evidence.local_function = mined->canonical;
            f.message = "inter-contract call header looks like \"" + skeleton +
                        "\" but hashes to " + eth::to_hex(sel_literal) +
                        ", which is the selector of locally declared \"" +
                        mined->canonical +
                        "\": a mined function silently captures the tampered call";
        } else {
            f.attack_class = AttackClass::a5;
            f.severity = Severity::high;
            f.message = "inter-contract call header looks like \"" + skeleton +
                        "\" (selector " + eth::to_hex(sel_skeleton) +
                        ") but its actual bytes hash to " + eth::to_hex(sel_literal) +
                        ", so the call targets a non-existing function";
        }
        findings.push_back(std::move(f));
    }
    return findings;
}

}  // namespace sescan::scanner
