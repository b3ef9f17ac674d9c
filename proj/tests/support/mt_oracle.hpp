#pragma once

// Test-only oracle: a direct transcription of the MT19937 recurrence with
// modular circular-buffer indices, advancing one word per call with no
// loop splitting and no block regeneration. Written against the published
// recurrence, independently of the library implementation it checks.

#include <cstdint>
#include <vector>

namespace oracle {

struct Params {
    unsigned w, n, m, r;
    std::uint32_t a;
};

inline constexpr Params kMt19937{32, 624, 397, 31, 0x9908B0DFu};
// Small instance for exercising the transition-matrix construction at a
// dimension where brute force stays instant (effective size 29 bits).
inline constexpr Params kToy{8, 4, 2, 3, 0xB8u};

class StepOracle {
public:
    StepOracle(const Params& p, std::vector<std::uint32_t> init)
        : p_(p), x_(std::move(init)) {}

    static StepOracle seeded(const Params& p, std::uint32_t seed) {
        std::vector<std::uint32_t> x(p.n);
        x[0] = seed;
        for (unsigned i = 1; i < p.n; ++i)
            x[i] = 1812433253u * (x[i - 1] ^ (x[i - 1] >> 30)) + i;
        if (p.w < 32)
            for (auto& v : x)
                v &= word_mask(p);
        return StepOracle(p, std::move(x));
    }

    static std::uint32_t word_mask(const Params& p) {
        return p.w == 32 ? 0xFFFFFFFFu : ((std::uint32_t(1) << p.w) - 1);
    }

    // One recurrence step; returns the word entering the state.
    std::uint32_t step() {
        const std::uint32_t mask = word_mask(p_);
        const std::uint32_t h = (mask >> p_.r) << p_.r;
        const std::uint32_t l = mask & ~h;
        const std::size_t n = p_.n;
        std::uint32_t u = (x_[k_ % n] & h) | (x_[(k_ + 1) % n] & l);
        std::uint32_t ua = u >> 1;
        if (u & 1u)
            ua ^= p_.a;
        const std::uint32_t xn = (x_[(k_ + p_.m) % n] ^ ua) & mask;
        x_[k_ % n] = xn;
        ++k_;
        return xn;
    }

    // Next output value (32-bit parameters only).
    std::uint32_t next_u32() { return temper(step()); }

    // State words in logical order, oldest first.
    std::vector<std::uint32_t> state_words() const {
        std::vector<std::uint32_t> out(p_.n);
        for (unsigned i = 0; i < p_.n; ++i)
            out[i] = x_[(k_ + i) % p_.n];
        return out;
    }

    static std::uint32_t temper(std::uint32_t x) {
        std::uint32_t y = x ^ ((x >> 11) & 0xFFFFFFFFu);
        y ^= (y << 7) & 0x9D2C5680u;
        y ^= (y << 15) & 0xEFC60000u;
        return y ^ (y >> 18);
    }

    const Params& params() const { return p_; }

private:
    Params p_;
    std::vector<std::uint32_t> x_;
    std::uint64_t k_ = 0;
};

} // namespace oracle
