#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sescan/address_kind.hpp"
#include "sescan/eth.hpp"
#include "sescan/miner.hpp"
#include "sescan/report.hpp"
#include "sescan/scanner.hpp"

namespace fs = std::filesystem;
using namespace sescan;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

// shell-style match for the file glob (supports * and ?)
bool glob_match(std::string_view pattern, std::string_view name) {
    size_t p = 0;
    size_t n = 0;
    size_t star = std::string_view::npos;
    size_t star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            star_n = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') {
        ++p;
    }
    return p == pattern.size();
}

struct ScanOptions {
    std::vector<std::string> paths;
    std::string out_path;
    std::string severity_floor = "medium";
    std::string classes = "A1,A2,A3,A4,A5,A6";
    std::string snapshot;
    std::string rpc;
    std::string glob = "*.sol";
    unsigned jobs = 0;  // 0 = hardware concurrency
};

std::optional<scanner::ScanConfig> build_config(const ScanOptions& opt, std::string& error) {
    scanner::ScanConfig config;

    auto floor = scanner::severity_from(opt.severity_floor);
    if (!floor) {
        error = "unknown severity '" + opt.severity_floor + "' (info|medium|high)";
        return std::nullopt;
    }
    config.severity_floor = *floor;

    config.enabled_classes = {false, false, false, false, false, false};
    std::stringstream list(opt.classes);
    std::string item;
    bool any = false;
    while (std::getline(list, item, ',')) {
        auto cls = scanner::attack_class_from(item);
        if (!cls) {
            error = "unknown attack class '" + item + "' (A1..A6)";
            return std::nullopt;
        }
        config.enabled_classes[static_cast<size_t>(*cls)] = true;
        any = true;
    }
    if (!any) {
        error = "at least one attack class must be enabled";
        return std::nullopt;
    }

    if (!opt.snapshot.empty()) {
        try {
            config.address_kinds = addrkind::load_snapshot(opt.snapshot);
        } catch (const addrkind::SnapshotError& e) {
            error = "snapshot " + opt.snapshot + " line " + std::to_string(e.line()) +
                    ": " + e.what();
            return std::nullopt;
        }
    }
    return config;
}

std::vector<std::string> collect_files(const std::vector<std::string>& paths,
                                       std::string_view glob,
                                       std::vector<report::FileError>& errors) {
    std::set<std::string> files;
    for (const auto& path : paths) {
        std::error_code ec;
        fs::file_status status = fs::status(path, ec);
        if (ec || status.type() == fs::file_type::not_found) {
            errors.push_back({path, "path does not exist"});
            continue;
        }
        if (fs::is_directory(status)) {
            for (auto it = fs::recursive_directory_iterator(
                     path, fs::directory_options::skip_permission_denied, ec);
                 it != fs::recursive_directory_iterator(); ++it) {
                if (it->is_regular_file(ec) &&
                    glob_match(glob, it->path().filename().string())) {
                    files.insert(it->path().generic_string());
                }
            }
        } else {
            files.insert(fs::path(path).generic_string());  // explicit file: no glob filter
        }
    }
    return {files.begin(), files.end()};
}

// resolve hard-coded addresses over JSON-RPC and merge below the snapshot
// (snapshot entries win: only they can assert payability)
void merge_live_kinds(const std::vector<std::string>& files, const std::string& rpc,
                      scanner::ScanConfig& config) {
    std::set<eth::Address> seen;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        auto lexed = scanner::tokenize(buffer.str());
        if (!lexed.ok) {
            continue;
        }
        for (const auto& token : lexed.tokens) {
            if (token.kind == scanner::TokenKind::address_literal) {
                if (auto addr = eth::parse_address(token.text)) {
                    seen.insert(*addr);
                }
            }
        }
    }

    addrkind::NodeClient client(rpc);
    for (const auto& addr : seen) {
        if (config.address_kinds.entries.contains(addr)) {
            continue;
        }
        auto answer = client.query(addr);
        if (!answer) {
            std::cerr << "warning: " << client.last_error()
                      << "; continuing with kind unknown for " << eth::to_hex(addr)
                      << "\n";
            continue;
        }
        config.address_kinds.entries.emplace(addr, answer->kind);
    }
}

int cmd_scan(const ScanOptions& opt) {
    std::string config_error;
    auto config = build_config(opt, config_error);
    if (!config) {
        std::cerr << "error: " << config_error << "\n";
        return kExitError;
    }

    report::Report rep;
    std::vector<report::FileError> path_errors;
    std::vector<std::string> files = collect_files(opt.paths, opt.glob, path_errors);

    if (!opt.rpc.empty()) {
        merge_live_kinds(files, opt.rpc, *config);
    }

    struct FileOutcome {
        std::vector<scanner::Finding> findings;
        std::string error;
        bool scanned = false;
    };
    std::vector<FileOutcome> outcomes(files.size());

    unsigned jobs = opt.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                  : opt.jobs;
    jobs = std::min<unsigned>(jobs, std::max<size_t>(files.size(), 1));

    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= files.size()) {
                return;
            }
            std::ifstream in(files[i], std::ios::binary);
            if (!in) {
                outcomes[i].error = "cannot read file";
                continue;
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            auto result = scanner::scan(buffer.str(), *config);
            if (result.error) {
                outcomes[i].error = *result.error;
            } else {
                outcomes[i].scanned = true;
                outcomes[i].findings = std::move(result.findings);
            }
        }
    };
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    for (const auto& cls : scanner::kAllClasses) {
        rep.per_class_counts[std::string(scanner::to_string(cls))] = 0;
    }
    for (size_t i = 0; i < files.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            rep.errors.push_back({files[i], outcomes[i].error});
            continue;
        }
        rep.scanned_files += 1;
        for (auto& finding : outcomes[i].findings) {
            rep.per_class_counts[std::string(scanner::to_string(finding.attack_class))]++;
            rep.findings.push_back({files[i], std::move(finding)});
        }
    }
    for (auto& fe : path_errors) {
        rep.errors.push_back(std::move(fe));
    }
    std::sort(rep.errors.begin(), rep.errors.end(),
              [](const report::FileError& a, const report::FileError& b) {
                  return a.file < b.file;
              });

    for (const auto& cls : scanner::kAllClasses) {
        if (config->enabled(cls)) {
            rep.config_echo.classes.push_back(std::string(scanner::to_string(cls)));
        }
    }
    rep.config_echo.severity_floor = std::string(scanner::to_string(config->severity_floor));
    rep.config_echo.glob = opt.glob;
    rep.config_echo.snapshot = opt.snapshot;
    rep.config_echo.rpc = opt.rpc;

    std::string serialized = report::to_json(rep);
    if (opt.out_path.empty()) {
        std::cout << serialized;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << opt.out_path << "\n";
            return kExitError;
        }
        out << serialized;
    }

    if (rep.scanned_files == 0) {
        return kExitError;  // nothing scannable
    }
    return rep.findings.empty() ? kExitClean : kExitFindings;
}

int cmd_selector(const std::string& header) {
    try {
        std::cout << eth::to_hex(eth::compute_selector(header)) << "\n";
        return kExitClean;
    } catch (const eth::HeaderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_checksum(const std::string& text) {
    auto classified = eth::eip55_classify(text);
    if (classified.case_class == eth::ChecksumClass::malformed) {
        std::cout << "malformed\n";
        return kExitError;
    }
    std::cout << eth::to_string(classified.case_class) << " "
              << eth::eip55_encode(*classified.address).text << "\n";
    return kExitClean;
}

int cmd_derive(const std::string& sender_text, const std::string& nonce_text) {
    auto sender = eth::parse_address(sender_text);
    if (!sender) {
        std::cerr << "error: sender must be 0x + 40 hex digits\n";
        return kExitError;
    }
    uint64_t nonce = 0;
    auto [ptr, ec] = std::from_chars(nonce_text.data(),
                                     nonce_text.data() + nonce_text.size(), nonce);
    if (ec != std::errc{} || ptr != nonce_text.data() + nonce_text.size()) {
        std::cerr << "error: nonce must be a decimal integer below 2^64\n";
        return kExitError;
    }
    std::cout << eth::to_hex(eth::derive_create_address(*sender, eth::Nonce{nonce}))
              << "\n";
    return kExitClean;
}

struct MineOptions {
    std::string target;
    std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::string arg_signature = "(uint256)";
    unsigned max_len = 4;
    unsigned match_bits = 32;
    uint64_t budget = UINT64_MAX;
    unsigned jobs = 0;
    bool progress = false;
    double bench_seconds = 0;
};

int cmd_mine(const MineOptions& opt) {
    if (opt.bench_seconds > 0) {
        double rate = miner::throughput_bench(std::chrono::duration<double>(opt.bench_seconds));
        std::cout << "throughput: " << static_cast<uint64_t>(rate)
                  << " candidates/s per worker\n";
        std::cout << "expected full 32-bit search: "
                  << static_cast<uint64_t>(4294967296.0 / rate)
                  << " s per worker (divide by workers)\n";
        return kExitClean;
    }

    auto target = eth::parse_selector(opt.target);
    if (!target) {
        std::cerr << "error: target must be 8 hex digits\n";
        return kExitError;
    }

    miner::MiningTask task;
    task.target = *target;
    task.match_bits = opt.match_bits;
    task.alphabet = opt.alphabet;
    task.name_length_max = opt.max_len;
    task.arg_signature = opt.arg_signature;
    task.budget = opt.budget;
    task.workers = opt.jobs;
    if (opt.progress) {
        task.progress = [](uint64_t scheduled, uint64_t total) {
            std::cerr << "mining: " << scheduled << " / " << total << " candidates\r";
        };
    }

    try {
        miner::MiningResult result = miner::mine(task);
        if (opt.progress) {
            std::cerr << "\n";
        }
        if (result.found) {
            std::cout << result.found->canonical() << " "
                      << eth::to_hex(eth::compute_selector(*result.found))
                      << " candidates=" << result.candidates_tried << "\n";
            return kExitClean;
        }
        std::cout << "NOT FOUND candidates=" << result.candidates_tried << "\n";
        return kExitFindings;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"static detector for address-manipulation and homograph attack "
                 "patterns in smart-contract source"};
    app.require_subcommand(1);

    ScanOptions scan_opt;
    auto* scan = app.add_subcommand("scan", "scan source files and emit a JSON report");
    scan->add_option("paths", scan_opt.paths, "files or directories")->required();
    scan->add_option("--out", scan_opt.out_path, "write the report to a file");
    scan->add_option("--severity-floor", scan_opt.severity_floor,
                     "minimum severity to report (info|medium|high)");
    scan->add_option("--classes", scan_opt.classes, "comma list of enabled classes (A1..A6)");
    scan->add_option("--snapshot", scan_opt.snapshot, "address-kind snapshot file");
    scan->add_option("--rpc", scan_opt.rpc, "JSON-RPC endpoint for live eth_getCode checks");
    scan->add_option("--glob", scan_opt.glob, "filename pattern for directories");
    scan->add_option("--jobs", scan_opt.jobs, "parallel scan workers (0 = all cores)");

    std::string selector_header;
    auto* selector = app.add_subcommand("selector", "print the 4-byte selector of a header");
    selector->add_option("header", selector_header, "e.g. transfer(address,uint256)")
        ->required();

    std::string checksum_text;
    auto* checksum = app.add_subcommand("checksum",
                                        "classify an address rendering and print its "
                                        "EIP-55 form");
    checksum->add_option("address", checksum_text)->required();

    std::string derive_sender;
    std::string derive_nonce;
    auto* derive = app.add_subcommand("derive", "derive the contract address CREATE "
                                                "would assign");
    derive->add_option("sender", derive_sender)->required();
    derive->add_option("nonce", derive_nonce)->required();

    MineOptions mine_opt;
    auto* mine = app.add_subcommand("mine", "search for a header matching a selector");
    mine->add_option("--target", mine_opt.target, "target selector, 8 hex digits");
    mine->add_option("--alphabet", mine_opt.alphabet, "name characters, in order");
    mine->add_option("--arg-signature", mine_opt.arg_signature,
                     "fixed canonical argument list, e.g. (uint256)");
    mine->add_option("--max-len", mine_opt.max_len, "maximum name length");
    mine->add_option("--match-bits", mine_opt.match_bits, "leading bits that must match");
    mine->add_option("--budget", mine_opt.budget, "maximum candidates to try");
    mine->add_option("--jobs", mine_opt.jobs, "worker threads (0 = all cores)");
    mine->add_flag("--progress", mine_opt.progress, "report progress on stderr");
    mine->add_option("--bench", mine_opt.bench_seconds,
                     "measure hashing throughput for N seconds and exit");

    CLI11_PARSE(app, argc, argv);

    if (scan->parsed()) return cmd_scan(scan_opt);
    if (selector->parsed()) return cmd_selector(selector_header);
    if (checksum->parsed()) return cmd_checksum(checksum_text);
    if (derive->parsed()) return cmd_derive(derive_sender, derive_nonce);
    if (mine->parsed()) return cmd_mine(mine_opt);
    return kExitError;
}
