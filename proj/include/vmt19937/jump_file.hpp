#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "vmt19937/f2_matrix.hpp"

namespace vmt19937 {

// Jump-matrix file: 20-byte little-endian header
//   magic "VMTJ" | version u32 = 1 | dimension u32 | exponent u32 | reserved u32 = 0
// followed by dimension rows of ceil(dimension/64) 64-bit little-endian
// words, row-major, padding bits zero. Rows are padded to whole words, so
// a 19937-dimension file is 19937 * 312 * 8 bytes (~49.8 MB) of payload.
//
// A checkpoint carries the same header plus a u32 count of completed
// squarings, then the current ladder matrix as payload.

inline constexpr char kJumpFileMagic[4] = {'V', 'M', 'T', 'J'};
inline constexpr std::uint32_t kJumpFileVersion = 1;

struct LoadedJumpMatrix {
    F2Matrix matrix;
    unsigned exponent;
};

struct LoadedCheckpoint {
    F2Matrix matrix;
    unsigned target_exponent;
    unsigned completed;
};

void write_jump_matrix_file(const std::filesystem::path& path, const F2Matrix& m,
                            unsigned exponent);
LoadedJumpMatrix read_jump_matrix_file(const std::filesystem::path& path);

void write_checkpoint_file(const std::filesystem::path& path, const F2Matrix& m,
                           unsigned target_exponent, unsigned completed);
LoadedCheckpoint read_checkpoint_file(const std::filesystem::path& path);

// Conventional file name for the matrix that skips 2^exponent steps,
// looked up under VMT_JUMP_DIR.
std::string jump_matrix_file_name(unsigned exponent);

// Offline computation of the transition matrix raised to the 2^exponent-th
// power, with periodic resumable checkpoints next to the output file.
struct JumpComputeOptions {
    unsigned exponent = 0;
    std::filesystem::path out;
    unsigned checkpoint_every = 64; // squarings between checkpoints; 0 disables
    std::optional<std::filesystem::path> resume;
    unsigned workers = 0;            // 0 = hardware default
    std::ostream* progress = nullptr;
};

void compute_jump_matrix(const JumpComputeOptions& opt);

} // namespace vmt19937
