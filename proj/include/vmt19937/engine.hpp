#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <variant>

#include "vmt19937/jump.hpp"
#include "vmt19937/lane_ops.hpp"
#include "vmt19937/mt19937.hpp"

namespace vmt19937 {

enum class QueryMode { kSingle, kBlock16, kStateBlock };

// Construction parameters for the interleaved generator.
struct VmtConfig {
    unsigned lanes = 1;                 // 1, 2, 4, 8 or 16
    QueryMode mode = QueryMode::kSingle; // how callers intend to query
    unsigned jump_exponent;             // lane t is de-phased by t * 2^q steps

    VmtConfig(unsigned lanes_, QueryMode mode_ = QueryMode::kSingle)
        : lanes(lanes_), mode(mode_),
          jump_exponent(JumpSpec::full_period_exponent(lanes_)) {}
    VmtConfig(unsigned lanes_, QueryMode mode_, unsigned jump_exponent_)
        : lanes(lanes_), mode(mode_), jump_exponent(jump_exponent_) {}

    void validate() const {
        if (lanes != 1 && lanes != 2 && lanes != 4 && lanes != 8 && lanes != 16)
            throw std::invalid_argument("lanes must be one of 1, 2, 4, 8, 16");
    }
};

// VMT19937: M MT19937 streams de-phased by jump-ahead and advanced
// simultaneously. The state interleaves the M lane states word by word
// (group k holds word k of every lane), so each step of the recurrence is
// one M-lane operation on contiguous, aligned memory. Tempered outputs are
// staged through a 16-word (cache line) buffer; whole blocks can be
// queried to amortize the exhaustion checks.
template <int M, class Ops = DefaultLanesT<M>>
class alignas(64) VmtEngine {
    static_assert(M >= 1 && M <= 16 && (M & (M - 1)) == 0, "lanes must be 1, 2, 4, 8 or 16");
    static_assert(Ops::lanes == M, "backend lane count mismatch");

public:
    static constexpr int lanes = M;
    static constexpr std::size_t state_words = kStateLen * M;
    static constexpr std::size_t buffer_words = 16;

    // Seeds one MT19937 state and de-phases M copies of it by successive
    // multiplications with the jump matrix (the one-step transition matrix
    // raised to the 2^q-th power). The first query regenerates.
    VmtEngine(std::uint32_t seed, const F2Matrix& jump_matrix, unsigned jump_exponent)
        : jump_exponent_(jump_exponent) {
        auto lane_states =
            make_dephased_states(Mt19937(seed), JumpSpec{jump_exponent, M}, jump_matrix);
        for (std::size_t k = 0; k < kStateLen; ++k)
            for (int t = 0; t < M; ++t)
                state_[k * M + t] = lane_states[t].words()[k];
        state_cursor_ = state_words;
        buffer_cursor_ = buffer_words;
    }

    // M == 1 needs no de-phasing; the matrix is never consulted.
    explicit VmtEngine(std::uint32_t seed)
        requires(M == 1)
        : VmtEngine(seed, F2Matrix(), 0) {}

    std::uint32_t next_u32() {
        if (buffer_cursor_ == buffer_words)
            refill_buffer();
        return buffer_[buffer_cursor_++];
    }

    // Next 16 stream values; identical to 16 single queries.
    void next_block16(std::uint32_t* out) {
        if (buffer_cursor_ == buffer_words) {
            if (state_cursor_ == state_words)
                regenerate();
            temper_words(state_.data() + state_cursor_, out, buffer_words);
            state_cursor_ += buffer_words;
        } else {
            for (std::size_t i = 0; i < buffer_words; ++i)
                out[i] = next_u32();
        }
    }

    // Next 624*M stream values, tempered straight from a fresh state block.
    // Only valid in whole-state cadence: mixing with single or 16-word
    // queries mid-block is rejected.
    void next_block_state(std::uint32_t* out) {
        if (buffer_cursor_ != buffer_words || state_cursor_ != state_words)
            throw std::logic_error("state-block query off a state-block boundary");
        regenerate();
        temper_words(state_.data(), out, state_words);
        state_cursor_ = state_words;
    }

    unsigned jump_exponent() const { return jump_exponent_; }
    std::span<const std::uint32_t, state_words> interleaved_state() const { return state_; }
    const std::uint32_t* state_data() const { return state_.data(); }

private:
    using Reg = typename Ops::Reg;

    // Advances all M lanes by one full block: the usual three loops, each
    // 32-bit operation widened to an M-lane group operation. Group k+1's
    // load is carried into the next iteration.
    void regenerate() {
        constexpr std::size_t n = kStateLen;
        constexpr std::size_t m = kShift;
        const Reg h = Ops::broadcast(0x80000000u);
        const Reg l = Ops::broadcast(0x7FFFFFFFu);
        const Reg a = Ops::broadcast(0x9908B0DFu);
        std::uint32_t* s = state_.data();

        Reg xk = Ops::load(s);
        for (std::size_t k = 0; k < n - m; ++k) {
            const Reg xk1 = Ops::load(s + (k + 1) * M);
            Ops::store(s + k * M, Ops::twist(xk, xk1, Ops::load(s + (k + m) * M), h, l, a));
            xk = xk1;
        }
        for (std::size_t k = n - m; k < n - 1; ++k) {
            const Reg xk1 = Ops::load(s + (k + 1) * M);
            Ops::store(s + k * M, Ops::twist(xk, xk1, Ops::load(s + (k + m - n) * M), h, l, a));
            xk = xk1;
        }
        // the wrapped operands are this pass's fresh groups 0 and m-1
        Ops::store(s + (n - 1) * M,
                   Ops::twist(xk, Ops::load(s), Ops::load(s + (m - 1) * M), h, l, a));
        state_cursor_ = 0;
    }

    // Tempers count words (a multiple of 16) from src into dst at the
    // lane-group width; dst may be unaligned.
    static void temper_words(const std::uint32_t* src, std::uint32_t* dst, std::size_t count) {
        const Reg b = Ops::broadcast(0x9D2C5680u);
        const Reg c = Ops::broadcast(0xEFC60000u);
        for (std::size_t i = 0; i < count; i += M)
            Ops::storeu(dst + i, Ops::temper(Ops::load(src + i), b, c));
    }

    void refill_buffer() {
        if (state_cursor_ == state_words)
            regenerate();
        temper_words(state_.data() + state_cursor_, buffer_.data(), buffer_words);
        state_cursor_ += buffer_words;
        buffer_cursor_ = 0;
    }

    alignas(64) std::array<std::uint32_t, state_words> state_;
    alignas(64) std::array<std::uint32_t, buffer_words> buffer_;
    std::size_t state_cursor_;  // words consumed from the interleaved state
    std::size_t buffer_cursor_; // words consumed from the tempered buffer
    unsigned jump_exponent_;
};

// Runtime-lane-count front end over the fixed-M engines.
class VmtGenerator {
public:
    VmtGenerator(std::uint32_t seed, const VmtConfig& cfg, const F2Matrix& jump_matrix)
        : impl_(make(seed, cfg, jump_matrix)) {}

    // Lane count 1 needs no jump matrix.
    explicit VmtGenerator(std::uint32_t seed)
        : impl_(std::make_unique<Impl>(VmtEngine<1>(seed))) {}

    std::uint32_t next_u32() {
        return std::visit([](auto& e) { return e.next_u32(); }, *impl_);
    }
    void next_block16(std::uint32_t* out) {
        std::visit([out](auto& e) { e.next_block16(out); }, *impl_);
    }
    void next_block_state(std::uint32_t* out) {
        std::visit([out](auto& e) { e.next_block_state(out); }, *impl_);
    }
    unsigned lanes() const {
        return unsigned(std::visit([](const auto& e) { return std::size_t(e.lanes); }, *impl_));
    }
    std::size_t state_words() const {
        return std::visit([](const auto& e) { return e.state_words; }, *impl_);
    }

private:
    using Impl = std::variant<VmtEngine<1>, VmtEngine<2>, VmtEngine<4>, VmtEngine<8>,
                              VmtEngine<16>>;

    static std::unique_ptr<Impl> make(std::uint32_t seed, const VmtConfig& cfg,
                                      const F2Matrix& jump_matrix) {
        cfg.validate();
        switch (cfg.lanes) {
        case 1:
            return std::make_unique<Impl>(VmtEngine<1>(seed, jump_matrix, cfg.jump_exponent));
        case 2:
            return std::make_unique<Impl>(VmtEngine<2>(seed, jump_matrix, cfg.jump_exponent));
        case 4:
            return std::make_unique<Impl>(VmtEngine<4>(seed, jump_matrix, cfg.jump_exponent));
        case 8:
            return std::make_unique<Impl>(VmtEngine<8>(seed, jump_matrix, cfg.jump_exponent));
        default:
            return std::make_unique<Impl>(VmtEngine<16>(seed, jump_matrix, cfg.jump_exponent));
        }
    }

    std::unique_ptr<Impl> impl_;
};

} // namespace vmt19937
