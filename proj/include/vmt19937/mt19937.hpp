#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "vmt19937/f2_vector.hpp"

namespace vmt19937 {

// Parameter tuple of the MT19937 linear recurrence and tempering transform.
// The canonical instance is mt19937_params(); other tuples (smaller word
// width / state length) are accepted by the generic routines so that the
// linear algebra can be exercised at toy scale.
struct Mt19937Params {
    unsigned word_bits;     // w
    unsigned state_len;     // n
    unsigned shift;         // m, recurrence offset
    unsigned split;         // r, word split point
    std::uint32_t matrix_a; // last row of the companion matrix A
    std::uint32_t temper_d;
    std::uint32_t temper_b;
    std::uint32_t temper_c;
    unsigned temper_u; // right shift paired with d
    unsigned temper_s; // left shift paired with b
    unsigned temper_t; // left shift paired with c
    unsigned temper_l; // final right shift

    std::uint32_t word_mask() const {
        return word_bits == 32 ? 0xFFFFFFFFu : ((std::uint32_t(1) << word_bits) - 1);
    }
    std::uint32_t upper_mask() const { // h: bits r..w-1
        return (word_mask() >> split) << split;
    }
    std::uint32_t lower_mask() const { // l: bits 0..r-1
        return word_mask() & ~upper_mask();
    }
    std::size_t effective_bits() const { // nw - r
        return std::size_t(state_len) * word_bits - split;
    }
    // Throws std::invalid_argument on an inconsistent tuple.
    void validate() const;
};

// The standard 32-bit MT19937 parameters.
constexpr Mt19937Params mt19937_params() {
    return Mt19937Params{
        32, 624, 397, 31, 0x9908B0DFu,
        0xFFFFFFFFu, 0x9D2C5680u, 0xEFC60000u,
        11, 7, 15, 18,
    };
}

inline constexpr std::size_t kStateLen = 624;     // n
inline constexpr std::size_t kShift = 397;        // m
inline constexpr std::size_t kEffectiveBits = 19937; // nw - r

// Output transform: the four shift/mask lines applied to every state word
// before it is emitted.
inline std::uint32_t temper(std::uint32_t x) {
    std::uint32_t y = x ^ (x >> 11);
    y ^= (y << 7) & 0x9D2C5680u;
    y ^= (y << 15) & 0xEFC60000u;
    return y ^ (y >> 18);
}

// u * A over GF(2), where A is the companion matrix with last row holding
// the bits of 0x9908B0DF. Branch free: the low bit of u selects the row.
inline std::uint32_t mul_a(std::uint32_t u) {
    return (u >> 1) ^ ((0u - (u & 1u)) & 0x9908B0DFu);
}

// Scalar MT19937 generator: 624-word circular block plus a consumption
// cursor. cursor == state_len marks an exhausted block (next query
// regenerates); cursor == 0 marks a freshly regenerated, unconsumed block.
class Mt19937 {
public:
    static constexpr std::size_t state_len = kStateLen;

    // Knuth-multiplier seeding; leaves the generator one regeneration away
    // from its first output.
    explicit Mt19937(std::uint32_t seed);

    // Adopts 624 words as the current state block at the pre-regeneration
    // boundary (the same place seeding leaves the generator): the words
    // feed the next regeneration and are never emitted themselves.
    static Mt19937 from_words(std::span<const std::uint32_t, state_len> words);

    std::uint32_t next_u32();

    // Replaces all 624 words in place (three split loops: 227 + 396 + 1
    // steps) and rewinds the cursor.
    void regenerate();

    std::span<const std::uint32_t, state_len> words() const { return words_; }
    std::size_t cursor() const { return cursor_; }

private:
    Mt19937() = default;

    std::array<std::uint32_t, state_len> words_;
    std::size_t cursor_ = 0;
};

// --- effective-state layout -------------------------------------------------
//
// The low r bits of words[0] never enter the recurrence, so a state block
// that has not been tempered yet is equivalent to an (nw - r)-bit vector.
// Layout: bit 0 of the vector is bit r of words[0], followed by the
// remaining high bits of words[0], then all bits of words[1..n-1], least
// significant first within each word. The transition matrix built by
// build_transition_matrix uses the same layout.

F2Vector words_to_effective(std::span<const std::uint32_t> words, const Mt19937Params& p);
void effective_to_words(const F2Vector& v, const Mt19937Params& p,
                        std::span<std::uint32_t> words_out);

// Boundary wrappers for the canonical generator. Extraction is defined
// only at the pre-regeneration boundary (cursor == state_len, where
// seeding leaves the state): there the dead bits of words[0] cannot have
// reached any output, so dropping them is exact. Other cursors are
// rejected. effective_to_state returns a state at the same boundary.
F2Vector state_to_effective(const Mt19937& s);
Mt19937 effective_to_state(const F2Vector& v);

} // namespace vmt19937
