#include "vmt19937/f2_matrix.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace vmt19937 {

namespace {

// Row-block size for the set-bit index lists and stripe width (in 64-bit
// words) for the column sweep. A 512-byte stripe over all rows of b stays
// resident in L2 while a block of output rows is accumulated.
constexpr std::size_t kRowBlock = 256;
constexpr std::size_t kStripeWords = 8;

void collect_set_bits(std::span<const std::uint64_t> row, std::size_t dim,
                      std::vector<std::uint32_t>& out) {
    for (std::size_t w = 0; w * 64 < dim; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
            out.push_back(std::uint32_t(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
}

// Multiplies rows [row_begin, row_end) of a into c.
void mul_rows(const F2Matrix& a, const F2Matrix& b, F2Matrix& c,
              std::size_t row_begin, std::size_t row_end) {
    const std::size_t dim = a.dim();
    const std::size_t rw = a.row_words();

    std::vector<std::uint32_t> idx;
    idx.reserve(kRowBlock * 64);
    std::vector<std::size_t> ends(kRowBlock);

    for (std::size_t r0 = row_begin; r0 < row_end; r0 += kRowBlock) {
        const std::size_t nrows = std::min(kRowBlock, row_end - r0);
        idx.clear();
        for (std::size_t i = 0; i < nrows; ++i) {
            collect_set_bits(a.row(r0 + i), dim, idx);
            ends[i] = idx.size();
        }
        for (std::size_t so = 0; so < rw; so += kStripeWords) {
            const std::size_t sw = std::min(kStripeWords, rw - so);
            const std::uint32_t* ip = idx.data();
            for (std::size_t i = 0; i < nrows; ++i) {
                const std::uint32_t* iend = idx.data() + ends[i];
                std::uint64_t* out = c.row(r0 + i).data() + so;
                if (sw == kStripeWords) {
                    std::uint64_t acc0 = 0, acc1 = 0, acc2 = 0, acc3 = 0;
                    std::uint64_t acc4 = 0, acc5 = 0, acc6 = 0, acc7 = 0;
                    for (; ip != iend; ++ip) {
                        const std::uint64_t* br = b.row(*ip).data() + so;
                        acc0 ^= br[0];
                        acc1 ^= br[1];
                        acc2 ^= br[2];
                        acc3 ^= br[3];
                        acc4 ^= br[4];
                        acc5 ^= br[5];
                        acc6 ^= br[6];
                        acc7 ^= br[7];
                    }
                    out[0] = acc0;
                    out[1] = acc1;
                    out[2] = acc2;
                    out[3] = acc3;
                    out[4] = acc4;
                    out[5] = acc5;
                    out[6] = acc6;
                    out[7] = acc7;
                } else {
                    std::uint64_t acc[kStripeWords] = {};
                    for (; ip != iend; ++ip) {
                        const std::uint64_t* br = b.row(*ip).data() + so;
                        for (std::size_t k = 0; k < sw; ++k)
                            acc[k] ^= br[k];
                    }
                    for (std::size_t k = 0; k < sw; ++k)
                        out[k] = acc[k];
                }
            }
        }
    }
}

} // namespace

F2Matrix F2Matrix::identity(std::size_t dim) {
    F2Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m.set(i, i);
    return m;
}

F2Vector F2Matrix::row_vector(std::size_t i) const {
    F2Vector v(dim_);
    std::memcpy(v.words().data(), row(i).data(), row_words_ * sizeof(std::uint64_t));
    return v;
}

void F2Matrix::set_row(std::size_t i, const F2Vector& v) {
    if (v.size() != dim_)
        throw std::invalid_argument("row length does not match matrix dimension");
    std::memcpy(row(i).data(), v.words().data(), row_words_ * sizeof(std::uint64_t));
}

bool F2Matrix::padding_clear() const {
    if (dim_ % 64 == 0)
        return true;
    for (std::size_t i = 0; i < dim_; ++i)
        if (row(i).back() >> (dim_ % 64))
            return false;
    return true;
}

F2Vector vec_mat_mul(const F2Vector& v, const F2Matrix& m) {
    if (v.size() != m.dim())
        throw std::invalid_argument("vector length does not match matrix dimension");
    F2Vector acc(m.dim());
    std::uint64_t* out = acc.words().data();
    const std::size_t rw = m.row_words();
    for (std::size_t w = 0; w * 64 < v.size(); ++w) {
        std::uint64_t bits = v.words()[w];
        while (bits) {
            const std::size_t i = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            const std::uint64_t* br = m.row(i).data();
            for (std::size_t k = 0; k < rw; ++k)
                out[k] ^= br[k];
        }
    }
    return acc;
}

F2Matrix mat_mul(const F2Matrix& a, const F2Matrix& b, unsigned workers) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimensions do not match");
    const std::size_t dim = a.dim();
    F2Matrix c(dim);

    if (workers == 0)
        workers = std::thread::hardware_concurrency();
    if (workers < 1)
        workers = 1;
    // Partition on row-block boundaries so each worker owns whole blocks.
    const std::size_t nblocks = (dim + kRowBlock - 1) / kRowBlock;
    workers = unsigned(std::min<std::size_t>(workers, nblocks));

    if (workers == 1) {
        mul_rows(a, b, c, 0, dim);
        return c;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t blocks_per = (nblocks + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        const std::size_t lo = std::min(dim, t * blocks_per * kRowBlock);
        const std::size_t hi = std::min(dim, (t + 1) * blocks_per * kRowBlock);
        if (lo < hi)
            pool.emplace_back(mul_rows, std::cref(a), std::cref(b), std::ref(c), lo, hi);
    }
    for (auto& th : pool)
        th.join();
    return c;
}

F2Matrix mat_pow2(F2Matrix m, unsigned q, const SquaringSink& sink, unsigned workers) {
    for (unsigned i = 0; i < q; ++i) {
        m = mat_mul(m, m, workers);
        if (sink)
            sink(m, i + 1);
    }
    return m;
}

F2Matrix build_transition_matrix(const Mt19937Params& p) {
    p.validate();
    const unsigned w = p.word_bits;
    const unsigned r = p.split;
    const std::size_t n = p.state_len;
    const std::size_t m = p.shift;
    const std::size_t dim = p.effective_bits();
    F2Matrix f(dim);

    // Position of bit j of state word i inside the effective vector.
    auto pos = [&](std::size_t i, unsigned j) -> std::size_t {
        return i == 0 ? j - r : (w - r) + w * (i - 1) + j;
    };
    auto flip = [&](std::size_t row, std::size_t col) {
        f.set(row, col, !f.get(row, col));
    };
    const std::size_t last = n - 1; // the freshly computed word

    // Feed of the new word through u * A, where u takes bit j of the
    // source word (word 0 via the upper mask, word 1 via the lower mask).
    auto feed_through_a = [&](std::size_t row, unsigned j) {
        if (j >= 1) {
            flip(row, pos(last, j - 1));
        } else {
            for (unsigned t = 0; t < w; ++t)
                if ((p.matrix_a >> t) & 1u)
                    flip(row, pos(last, t));
        }
    };

    for (unsigned j = r; j < w; ++j)
        feed_through_a(pos(0, j), j);
    for (unsigned j = 0; j < w; ++j) {
        const std::size_t row = pos(1, j);
        if (j >= r)
            flip(row, j - r); // survives as the new word 0
        else
            feed_through_a(row, j);
        if (m == 1)
            flip(row, pos(last, j)); // direct term of the recurrence
    }
    for (std::size_t i = 2; i < n; ++i)
        for (unsigned j = 0; j < w; ++j) {
            const std::size_t row = pos(i, j);
            flip(row, pos(i - 1, j));
            if (i == m)
                flip(row, pos(last, j));
        }
    return f;
}

} // namespace vmt19937
