#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vmt19937/f2_vector.hpp"
#include "vmt19937/mt19937.hpp"

namespace vmt19937 {

// Dense square bit matrix over GF(2), row-major, rows packed like F2Vector.
// Multiplication follows the row-vector convention: (v * M) is the XOR of
// rows[i] over the set bits i of v, so row i is the image of basis vector i.
class F2Matrix {
public:
    F2Matrix() = default;
    explicit F2Matrix(std::size_t dim)
        : dim_(dim), row_words_(F2Vector::word_count(dim)),
          words_(dim * row_words_, 0) {}

    static F2Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t row_words() const { return row_words_; }

    std::span<std::uint64_t> row(std::size_t i) {
        return {words_.data() + i * row_words_, row_words_};
    }
    std::span<const std::uint64_t> row(std::size_t i) const {
        return {words_.data() + i * row_words_, row_words_};
    }

    bool get(std::size_t r, std::size_t c) const {
        return (row(r)[c >> 6] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v = true) {
        const std::uint64_t bit = std::uint64_t(1) << (c & 63);
        if (v)
            row(r)[c >> 6] |= bit;
        else
            row(r)[c >> 6] &= ~bit;
    }

    F2Vector row_vector(std::size_t i) const;
    void set_row(std::size_t i, const F2Vector& v);

    // Contiguous row-major payload; exactly the on-disk layout.
    std::span<const std::uint64_t> data() const { return words_; }
    std::span<std::uint64_t> data() { return words_; }

    bool padding_clear() const;

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::size_t dim_ = 0;
    std::size_t row_words_ = 0;
    std::vector<std::uint64_t> words_;
};

// v * M: XOR-accumulates the rows selected by the set bits of v.
// Dimension mismatch is rejected.
F2Vector vec_mat_mul(const F2Vector& v, const F2Matrix& m);

// a * b, row by row; rows are independent and may be fanned out across
// workers (0 = hardware default). The result is bit-identical regardless
// of the worker count.
F2Matrix mat_mul(const F2Matrix& a, const F2Matrix& b, unsigned workers = 0);

// m^(2^q) by q successive squarings. After each squaring the sink, when
// set, receives the intermediate matrix and the number of completed
// squarings, which lets callers persist resumable checkpoints.
using SquaringSink = std::function<void(const F2Matrix&, unsigned completed)>;
F2Matrix mat_pow2(F2Matrix m, unsigned q, const SquaringSink& sink = {},
                  unsigned workers = 0);

// One-step transition matrix of the MT19937 recurrence on the effective
// (nw - r)-bit state, in the words_to_effective layout: advancing a state
// by one recurrence step equals multiplying its effective vector by this
// matrix. Built structurally from the recurrence coefficients; the
// word-shift blocks, the split-word corner, and the companion-matrix rows
// are placed directly.
F2Matrix build_transition_matrix(const Mt19937Params& p);

} // namespace vmt19937
