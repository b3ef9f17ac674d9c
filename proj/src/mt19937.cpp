#include "vmt19937/mt19937.hpp"

#include <algorithm>

namespace vmt19937 {

void Mt19937Params::validate() const {
    if (word_bits == 0 || word_bits > 32)
        throw std::invalid_argument("word_bits must be in [1,32]");
    if (state_len < 2)
        throw std::invalid_argument("state_len must be at least 2");
    if (split > word_bits - 1)
        throw std::invalid_argument("split must be in [0, word_bits-1]");
    if (shift < 1 || shift >= state_len)
        throw std::invalid_argument("shift must be in [1, state_len-1]");
    if (matrix_a & ~word_mask())
        throw std::invalid_argument("matrix_a exceeds the word width");
    if ((upper_mask() ^ lower_mask()) != word_mask() || (upper_mask() & lower_mask()) != 0)
        throw std::invalid_argument("split masks do not partition the word");
}

Mt19937::Mt19937(std::uint32_t seed) {
    words_[0] = seed;
    for (std::size_t i = 1; i < state_len; ++i)
        words_[i] = 1812433253u * (words_[i - 1] ^ (words_[i - 1] >> 30)) + std::uint32_t(i);
    cursor_ = state_len; // first query regenerates
}

Mt19937 Mt19937::from_words(std::span<const std::uint32_t, state_len> words) {
    Mt19937 s;
    std::copy(words.begin(), words.end(), s.words_.begin());
    s.cursor_ = state_len;
    return s;
}

void Mt19937::regenerate() {
    constexpr std::uint32_t h = 0x80000000u;
    constexpr std::uint32_t l = 0x7FFFFFFFu;
    constexpr std::size_t n = state_len;
    constexpr std::size_t m = kShift;
    std::uint32_t* x = words_.data();

    for (std::size_t k = 0; k < n - m; ++k)
        x[k] = x[k + m] ^ mul_a((x[k] & h) | (x[k + 1] & l));
    for (std::size_t k = n - m; k < n - 1; ++k)
        x[k] = x[k + m - n] ^ mul_a((x[k] & h) | (x[k + 1] & l));
    x[n - 1] = x[m - 1] ^ mul_a((x[n - 1] & h) | (x[0] & l));
    cursor_ = 0;
}

std::uint32_t Mt19937::next_u32() {
    if (cursor_ == state_len)
        regenerate();
    return temper(words_[cursor_++]);
}

F2Vector words_to_effective(std::span<const std::uint32_t> words, const Mt19937Params& p) {
    p.validate();
    if (words.size() != p.state_len)
        throw std::invalid_argument("word count does not match state_len");
    F2Vector v(p.effective_bits());
    std::size_t pos = 0;
    for (unsigned j = p.split; j < p.word_bits; ++j)
        v.set(pos++, (words[0] >> j) & 1u);
    for (std::size_t i = 1; i < p.state_len; ++i)
        for (unsigned j = 0; j < p.word_bits; ++j)
            v.set(pos++, (words[i] >> j) & 1u);
    return v;
}

void effective_to_words(const F2Vector& v, const Mt19937Params& p,
                        std::span<std::uint32_t> words_out) {
    p.validate();
    if (v.size() != p.effective_bits())
        throw std::invalid_argument("vector length does not match the effective dimension");
    if (words_out.size() != p.state_len)
        throw std::invalid_argument("word count does not match state_len");
    std::size_t pos = 0;
    words_out[0] = 0; // the low r bits are dead and come back as zero
    for (unsigned j = p.split; j < p.word_bits; ++j)
        words_out[0] |= std::uint32_t(v.get(pos++)) << j;
    for (std::size_t i = 1; i < p.state_len; ++i) {
        std::uint32_t w = 0;
        for (unsigned j = 0; j < p.word_bits; ++j)
            w |= std::uint32_t(v.get(pos++)) << j;
        words_out[i] = w;
    }
}

F2Vector state_to_effective(const Mt19937& s) {
    if (s.cursor() != Mt19937::state_len)
        throw std::logic_error(
            "effective-state extraction requires the pre-regeneration boundary");
    return words_to_effective(s.words(), mt19937_params());
}

Mt19937 effective_to_state(const F2Vector& v) {
    std::array<std::uint32_t, Mt19937::state_len> words;
    effective_to_words(v, mt19937_params(), words);
    return Mt19937::from_words(words);
}

} // namespace vmt19937
