#include "vmt19937/bench.hpp"

#include <chrono>
#include <stdexcept>
#include <vector>

namespace vmt19937 {

namespace {

using Clock = std::chrono::steady_clock;

std::uint32_t fold(const std::uint32_t* p, std::size_t n) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < n; ++i)
        x ^= p[i];
    return x;
}

template <class Gen>
BenchResult bench_single(Gen& gen, std::uint64_t count) {
    const auto t0 = Clock::now();
    std::uint32_t sum = 0;
    for (std::uint64_t i = 0; i < count; ++i)
        sum ^= gen.next_u32();
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    return {s, double(count) / s, sum};
}

template <int M>
BenchResult bench_vmt(const BenchConfig& cfg, VmtEngine<M>& gen) {
    if (cfg.block == QueryMode::kSingle)
        return bench_single(gen, cfg.count);

    if (cfg.block == QueryMode::kBlock16) {
        // The running fold loads at the engine's own lane width, so every
        // load forwards cleanly from the store that produced it; one
        // horizontal reduction happens after the clock stops.
        using Ops = DefaultLanesT<M>;
        using Reg = typename Ops::Reg;
        alignas(64) std::uint32_t buf[16];
        Reg acc = Ops::broadcast(0);
        const auto t0 = Clock::now();
        std::uint32_t sum = 0;
        std::uint64_t left = cfg.count;
        while (left >= 16) {
            gen.next_block16(buf);
            for (std::size_t o = 0; o < 16; o += std::size_t(M))
                acc = Ops::bxor(acc, Ops::load(buf + o));
            left -= 16;
        }
        if (left > 0) {
            gen.next_block16(buf);
            sum ^= fold(buf, std::size_t(left));
        }
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        alignas(64) std::uint32_t lanes_out[M];
        Ops::store(lanes_out, acc);
        sum ^= fold(lanes_out, std::size_t(M));
        return {s, double(cfg.count) / s, sum};
    }

    // State-block generation is timed per call (tens of microseconds each);
    // the checksum fold runs between blocks, off the stopwatch, so the mode
    // measures the generator itself while the output stays observably
    // consumed.

    std::vector<std::uint32_t> buf(VmtEngine<M>::state_words);
    std::uint32_t sum = 0;
    std::uint64_t left = cfg.count;
    Clock::duration gen_time{};
    while (left > 0) {
        const auto t0 = Clock::now();
        gen.next_block_state(buf.data());
        gen_time += Clock::now() - t0;
        const std::size_t take = left < buf.size() ? std::size_t(left) : buf.size();
        sum ^= fold(buf.data(), take);
        left -= take;
    }
    const double s = std::chrono::duration<double>(gen_time).count();
    return {s, double(cfg.count) / s, sum};
}

template <int M>
BenchResult make_and_bench(const BenchConfig& cfg) {
    const F2Matrix* jump = cfg.jump_matrix;
    const F2Matrix none; // single-lane runs never consult it
    if (jump == nullptr) {
        if (M != 1)
            throw std::invalid_argument("a jump matrix is required for lanes > 1");
        jump = &none;
    }
    VmtEngine<M> gen(cfg.seed, *jump, cfg.jump_exponent);
    return bench_vmt<M>(cfg, gen);
}

} // namespace

BenchResult run_benchmark(const BenchConfig& cfg) {
    if (cfg.generator == BenchGenerator::kScalar) {
        if (cfg.block != QueryMode::kSingle)
            throw std::invalid_argument("the scalar generator only supports single queries");
        Mt19937 gen(cfg.seed);
        return bench_single(gen, cfg.count);
    }
    switch (cfg.lanes) {
    case 1:
        return make_and_bench<1>(cfg);
    case 2:
        return make_and_bench<2>(cfg);
    case 4:
        return make_and_bench<4>(cfg);
    case 8:
        return make_and_bench<8>(cfg);
    case 16:
        return make_and_bench<16>(cfg);
    default:
        throw std::invalid_argument("lanes must be one of 1, 2, 4, 8, 16");
    }
}

} // namespace vmt19937
