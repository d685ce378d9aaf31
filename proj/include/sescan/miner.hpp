#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sescan/eth.hpp"

namespace sescan::miner {

// Brute-force search for a function name whose selector matches `target` on
// the leading `match_bits` bits. Candidate headers are `name + arg_signature`
// with names enumerated length-ascending, then lexicographic in alphabet
// order; digits never start a name.
struct MiningTask {
    eth::Selector target;
    unsigned match_bits = 32;            // 1..32
    std::string alphabet;                // ordered, unique ASCII identifier chars
    unsigned name_length_max = 4;
    std::string arg_signature = "()";    // canonical, e.g. "(uint256)"
    uint64_t budget = UINT64_MAX;        // max candidates to evaluate
    unsigned workers = 1;                // 0 = hardware concurrency

    // called with (candidates scheduled so far, total feasible) from the
    // coordinating thread roughly once per progress_interval
    std::function<void(uint64_t, uint64_t)> progress;
};

struct MiningResult {
    std::optional<eth::FunctionHeader> found;
    uint64_t candidates_tried = 0;  // index of match + 1, or min(budget, space)
    std::chrono::duration<double> elapsed{0};
};

// Number of feasible names (digit-free first char) up to name_length_max.
uint64_t search_space_size(const MiningTask& task);

// Name at enumeration index; index must be < search_space_size.
std::string name_at_index(const MiningTask& task, uint64_t index);

// First match in enumeration order, independent of worker count.
// Throws std::invalid_argument on violated task invariants.
MiningResult mine(const MiningTask& task);

// Candidate selector evaluations per second on a synthetic fixed workload.
double throughput_bench(std::chrono::duration<double> duration);

}  // namespace sescan::miner
