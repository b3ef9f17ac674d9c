#pragma once

#include <cstdint>

#include "vmt19937/engine.hpp"

namespace vmt19937 {

enum class BenchGenerator { kScalar, kVmt };

struct BenchConfig {
    BenchGenerator generator = BenchGenerator::kVmt;
    unsigned lanes = 1;
    QueryMode block = QueryMode::kSingle;
    std::uint64_t count = 100000000; // words to generate
    std::uint32_t seed = 5489;
    unsigned jump_exponent = 0;
    const F2Matrix* jump_matrix = nullptr; // required for lanes > 1
};

struct BenchResult {
    double seconds = 0.0;
    double words_per_sec = 0.0;
    std::uint32_t checksum = 0; // XOR fold of the first count outputs
};

// Times the generation of count words in the configured query mode. The
// checksum folds exactly count words so runs are comparable across block
// modes and generation cannot be optimized away. Construction and
// de-phasing are excluded from the timed region.
BenchResult run_benchmark(const BenchConfig& cfg);

} // namespace vmt19937
