#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <type_traits>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif
#if defined(__AVX2__) || defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace vmt19937 {

// M-lane 32-bit word vector backends. The engine is written against this
// contract (bitwise ops, per-lane shifts by a constant, odd-lane mask
// select, aligned loads); every backend produces bit-identical results, so
// the portable one doubles as the reference on hardware without SIMD.

template <int M>
struct ScalarLanes {
    static constexpr int lanes = M;
    using Reg = std::array<std::uint32_t, M>;

    static Reg load(const std::uint32_t* p) {
        Reg v;
        std::memcpy(v.data(), p, sizeof(Reg));
        return v;
    }
    static void store(std::uint32_t* p, const Reg& v) { std::memcpy(p, v.data(), sizeof(Reg)); }
    static void storeu(std::uint32_t* p, const Reg& v) { std::memcpy(p, v.data(), sizeof(Reg)); }
    static Reg broadcast(std::uint32_t x) {
        Reg v;
        v.fill(x);
        return v;
    }
    static Reg bxor(const Reg& a, const Reg& b) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = a[i] ^ b[i];
        return v;
    }
    static Reg band(const Reg& a, const Reg& b) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = a[i] & b[i];
        return v;
    }
    static Reg bor(const Reg& a, const Reg& b) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = a[i] | b[i];
        return v;
    }
    template <int S>
    static Reg shr(const Reg& a) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = a[i] >> S;
        return v;
    }
    template <int S>
    static Reg shl(const Reg& a) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = a[i] << S;
        return v;
    }
    // All-ones in every lane whose low bit is set.
    static Reg odd_mask(const Reg& a) {
        Reg v;
        for (int i = 0; i < M; ++i)
            v[i] = 0u - (a[i] & 1u);
        return v;
    }

    // One recurrence step on a lane group: xkm ^ A-product of the split
    // word (xk & h | xk1 & l). The odd/even row select is branch free.
    static Reg twist(const Reg& xk, const Reg& xk1, const Reg& xkm, const Reg& h,
                     const Reg& l, const Reg& a) {
        const Reg u = bor(band(xk, h), band(xk1, l));
        return bxor(xkm, bxor(shr<1>(u), band(odd_mask(u), a)));
    }

    // The four-stage output transform on a lane group.
    static Reg temper(Reg y, const Reg& b, const Reg& c) {
        y = bxor(y, shr<11>(y));
        y = bxor(y, band(shl<7>(y), b));
        y = bxor(y, band(shl<15>(y), c));
        return bxor(y, shr<18>(y));
    }
};

#if defined(__SSE2__)
struct Sse2Lanes {
    static constexpr int lanes = 4;
    using Reg = __m128i;

    static Reg load(const std::uint32_t* p) { return _mm_load_si128(reinterpret_cast<const __m128i*>(p)); }
    static void store(std::uint32_t* p, Reg v) { _mm_store_si128(reinterpret_cast<__m128i*>(p), v); }
    static void storeu(std::uint32_t* p, Reg v) { _mm_storeu_si128(reinterpret_cast<__m128i*>(p), v); }
    static Reg broadcast(std::uint32_t x) { return _mm_set1_epi32(int(x)); }
    static Reg bxor(Reg a, Reg b) { return _mm_xor_si128(a, b); }
    static Reg band(Reg a, Reg b) { return _mm_and_si128(a, b); }
    static Reg bor(Reg a, Reg b) { return _mm_or_si128(a, b); }
    template <int S>
    static Reg shr(Reg a) { return _mm_srli_epi32(a, S); }
    template <int S>
    static Reg shl(Reg a) { return _mm_slli_epi32(a, S); }
    static Reg odd_mask(Reg a) {
        const Reg one = _mm_set1_epi32(1);
        return _mm_cmpeq_epi32(_mm_and_si128(a, one), one);
    }
    static Reg twist(Reg xk, Reg xk1, Reg xkm, Reg h, Reg l, Reg a) {
        const Reg u = bor(band(xk, h), band(xk1, l));
        return bxor(xkm, bxor(shr<1>(u), band(odd_mask(u), a)));
    }
    static Reg temper(Reg y, Reg b, Reg c) {
        y = bxor(y, shr<11>(y));
        y = bxor(y, band(shl<7>(y), b));
        y = bxor(y, band(shl<15>(y), c));
        return bxor(y, shr<18>(y));
    }
};
#endif

#if defined(__AVX2__)
struct Avx2Lanes {
    static constexpr int lanes = 8;
    using Reg = __m256i;

    static Reg load(const std::uint32_t* p) { return _mm256_load_si256(reinterpret_cast<const __m256i*>(p)); }
    static void store(std::uint32_t* p, Reg v) { _mm256_store_si256(reinterpret_cast<__m256i*>(p), v); }
    static void storeu(std::uint32_t* p, Reg v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }
    static Reg broadcast(std::uint32_t x) { return _mm256_set1_epi32(int(x)); }
    static Reg bxor(Reg a, Reg b) { return _mm256_xor_si256(a, b); }
    static Reg band(Reg a, Reg b) { return _mm256_and_si256(a, b); }
    static Reg bor(Reg a, Reg b) { return _mm256_or_si256(a, b); }
    template <int S>
    static Reg shr(Reg a) { return _mm256_srli_epi32(a, S); }
    template <int S>
    static Reg shl(Reg a) { return _mm256_slli_epi32(a, S); }
    static Reg odd_mask(Reg a) {
        const Reg one = _mm256_set1_epi32(1);
        return _mm256_cmpeq_epi32(_mm256_and_si256(a, one), one);
    }
    static Reg twist(Reg xk, Reg xk1, Reg xkm, Reg h, Reg l, Reg a) {
        const Reg u = bor(band(xk, h), band(xk1, l));
        return bxor(xkm, bxor(shr<1>(u), band(odd_mask(u), a)));
    }
    static Reg temper(Reg y, Reg b, Reg c) {
        y = bxor(y, shr<11>(y));
        y = bxor(y, band(shl<7>(y), b));
        y = bxor(y, band(shl<15>(y), c));
        return bxor(y, shr<18>(y));
    }
};
#endif

#if defined(__AVX512F__)
struct Avx512Lanes {
    static constexpr int lanes = 16;
    using Reg = __m512i;

    static Reg load(const std::uint32_t* p) { return _mm512_load_si512(p); }
    static void store(std::uint32_t* p, Reg v) { _mm512_store_si512(p, v); }
    static void storeu(std::uint32_t* p, Reg v) { _mm512_storeu_si512(p, v); }
    static Reg broadcast(std::uint32_t x) { return _mm512_set1_epi32(int(x)); }
    static Reg bxor(Reg a, Reg b) { return _mm512_xor_si512(a, b); }
    static Reg band(Reg a, Reg b) { return _mm512_and_si512(a, b); }
    static Reg bor(Reg a, Reg b) { return _mm512_or_si512(a, b); }
    template <int S>
    static Reg shr(Reg a) { return _mm512_srli_epi32(a, S); }
    template <int S>
    static Reg shl(Reg a) { return _mm512_slli_epi32(a, S); }
    static Reg odd_mask(Reg a) {
        const Reg one = _mm512_set1_epi32(1);
        const __mmask16 m = _mm512_cmpeq_epi32_mask(_mm512_and_si512(a, one), one);
        return _mm512_maskz_mov_epi32(m, _mm512_set1_epi32(-1));
    }
    // Mask registers and three-input logic replace the cmp/and/or chains.
    static Reg twist(Reg xk, Reg xk1, Reg xkm, Reg h, Reg /*l*/, Reg a) {
        const Reg u = _mm512_ternarylogic_epi32(h, xk, xk1, 0xCA); // h ? xk : xk1
        const __mmask16 odd = _mm512_test_epi32_mask(u, _mm512_set1_epi32(1));
        const Reg base = _mm512_xor_si512(xkm, _mm512_srli_epi32(u, 1));
        return _mm512_mask_xor_epi32(base, odd, base, a);
    }
    static Reg temper(Reg y, Reg b, Reg c) {
        y = bxor(y, shr<11>(y));
        y = _mm512_ternarylogic_epi32(y, shl<7>(y), b, 0x78);  // y ^ (t & b)
        y = _mm512_ternarylogic_epi32(y, shl<15>(y), c, 0x78); // y ^ (t & c)
        return bxor(y, shr<18>(y));
    }
};
#endif

// Widest backend compiled in for a given lane count.
template <int M>
struct DefaultLanes {
    using type = ScalarLanes<M>;
};
#if defined(__SSE2__)
template <>
struct DefaultLanes<4> {
    using type = Sse2Lanes;
};
#endif
#if defined(__AVX2__)
template <>
struct DefaultLanes<8> {
    using type = Avx2Lanes;
};
#endif
#if defined(__AVX512F__)
template <>
struct DefaultLanes<16> {
    using type = Avx512Lanes;
};
#endif

template <int M>
using DefaultLanesT = typename DefaultLanes<M>::type;

// True when lane count M is served by a SIMD backend in this build.
template <int M>
constexpr bool has_simd_lanes() {
    return !std::is_same_v<DefaultLanesT<M>, ScalarLanes<M>>;
}

} // namespace vmt19937
