#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vmt19937 {

// Bit vector over GF(2), packed into 64-bit little-endian words, least
// significant bit first. Bits beyond size() are kept zero so that packed
// words compare and hash cleanly.
class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t nbits)
        : nbits_(nbits), words_(word_count(nbits), 0) {}

    static constexpr std::size_t word_count(std::size_t nbits) {
        return (nbits + 63) / 64;
    }

    std::size_t size() const { return nbits_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        const std::uint64_t bit = std::uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    F2Vector& operator^=(const F2Vector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] ^= o.words_[i];
        return *this;
    }

    bool is_zero() const {
        for (std::uint64_t w : words_)
            if (w)
                return false;
        return true;
    }

    // True when no bit beyond size() is set.
    bool padding_clear() const {
        if (nbits_ % 64 == 0 || words_.empty())
            return true;
        return (words_.back() >> (nbits_ % 64)) == 0;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    friend bool operator==(const F2Vector&, const F2Vector&) = default;

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace vmt19937
