#include "vmt19937/jump_file.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>

#include "vmt19937/mt19937.hpp"

namespace vmt19937 {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    const unsigned char b[4] = {
        (unsigned char)(v & 0xFF),
        (unsigned char)((v >> 8) & 0xFF),
        (unsigned char)((v >> 16) & 0xFF),
        (unsigned char)((v >> 24) & 0xFF),
    };
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void write_payload(std::ostream& os, const F2Matrix& m) {
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(m.data().data()),
                 std::streamsize(m.data().size() * sizeof(std::uint64_t)));
    } else {
        for (std::uint64_t w : m.data()) {
            unsigned char b[8];
            for (int i = 0; i < 8; ++i)
                b[i] = (unsigned char)(w >> (8 * i));
            os.write(reinterpret_cast<const char*>(b), 8);
        }
    }
}

void read_payload(std::istream& is, F2Matrix& m) {
    if constexpr (std::endian::native == std::endian::little) {
        is.read(reinterpret_cast<char*>(m.data().data()),
                std::streamsize(m.data().size() * sizeof(std::uint64_t)));
    } else {
        for (std::uint64_t& w : m.data()) {
            unsigned char b[8];
            is.read(reinterpret_cast<char*>(b), 8);
            w = 0;
            for (int i = 0; i < 8; ++i)
                w |= std::uint64_t(b[i]) << (8 * i);
        }
    }
}

void write_header(std::ostream& os, std::uint32_t dimension, std::uint32_t exponent) {
    os.write(kJumpFileMagic, 4);
    put_u32(os, kJumpFileVersion);
    put_u32(os, dimension);
    put_u32(os, exponent);
    put_u32(os, 0); // reserved
}

struct Header {
    std::uint32_t dimension;
    std::uint32_t exponent;
};

Header read_header(std::istream& is, const std::filesystem::path& path) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kJumpFileMagic, 4) != 0)
        throw std::runtime_error(path.string() + ": not a jump-matrix file");
    const std::uint32_t version = get_u32(is);
    if (version != kJumpFileVersion)
        throw std::runtime_error(path.string() + ": unsupported version");
    Header h;
    h.dimension = get_u32(is);
    h.exponent = get_u32(is);
    const std::uint32_t reserved = get_u32(is);
    if (!is || reserved != 0)
        throw std::runtime_error(path.string() + ": corrupt header");
    if (h.dimension == 0)
        throw std::runtime_error(path.string() + ": zero dimension");
    return h;
}

std::uintmax_t payload_bytes(std::uint32_t dimension) {
    return std::uintmax_t(dimension) * F2Vector::word_count(dimension) * 8;
}

// Writes through a temp file and renames, so interrupted writes never leave
// a truncated file at the final path.
template <class WriteBody>
void write_atomically(const std::filesystem::path& path, WriteBody&& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        body(os);
        os.flush();
        if (!os)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_jump_matrix_file(const std::filesystem::path& path, const F2Matrix& m,
                            unsigned exponent) {
    write_atomically(path, [&](std::ostream& os) {
        write_header(os, std::uint32_t(m.dim()), exponent);
        write_payload(os, m);
    });
}

LoadedJumpMatrix read_jump_matrix_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path.string());
    const Header h = read_header(is, path);
    if (std::filesystem::file_size(path) != 20 + payload_bytes(h.dimension))
        throw std::runtime_error(path.string() + ": payload size mismatch");
    LoadedJumpMatrix out{F2Matrix(h.dimension), h.exponent};
    read_payload(is, out.matrix);
    if (!is)
        throw std::runtime_error("read failed: " + path.string());
    if (!out.matrix.padding_clear())
        throw std::runtime_error(path.string() + ": nonzero padding bits");
    return out;
}

void write_checkpoint_file(const std::filesystem::path& path, const F2Matrix& m,
                           unsigned target_exponent, unsigned completed) {
    write_atomically(path, [&](std::ostream& os) {
        write_header(os, std::uint32_t(m.dim()), target_exponent);
        put_u32(os, completed);
        write_payload(os, m);
    });
}

LoadedCheckpoint read_checkpoint_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path.string());
    const Header h = read_header(is, path);
    const std::uint32_t completed = get_u32(is);
    if (std::filesystem::file_size(path) != 24 + payload_bytes(h.dimension))
        throw std::runtime_error(path.string() + ": payload size mismatch");
    if (completed > h.exponent)
        throw std::runtime_error(path.string() + ": completed squarings exceed the target");
    LoadedCheckpoint out{F2Matrix(h.dimension), h.exponent, completed};
    read_payload(is, out.matrix);
    if (!is)
        throw std::runtime_error("read failed: " + path.string());
    if (!out.matrix.padding_clear())
        throw std::runtime_error(path.string() + ": nonzero padding bits");
    return out;
}

std::string jump_matrix_file_name(unsigned exponent) {
    return "F_2p" + std::to_string(exponent) + ".vmtj";
}

void compute_jump_matrix(const JumpComputeOptions& opt) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    };

    F2Matrix m;
    unsigned done = 0;
    if (opt.resume) {
        LoadedCheckpoint ck = read_checkpoint_file(*opt.resume);
        if (ck.matrix.dim() != kEffectiveBits)
            throw std::runtime_error("checkpoint dimension mismatch");
        if (ck.target_exponent != opt.exponent)
            throw std::runtime_error("checkpoint targets a different exponent");
        m = std::move(ck.matrix);
        done = ck.completed;
        if (opt.progress)
            *opt.progress << "resuming at squaring " << done << "/" << opt.exponent << "\n";
    } else {
        m = build_transition_matrix(mt19937_params());
    }

    const std::filesystem::path ckpt = opt.out.string() + ".ckpt";
    for (unsigned i = done; i < opt.exponent; ++i) {
        m = mat_mul(m, m, opt.workers);
        const unsigned completed = i + 1;
        if (opt.checkpoint_every && completed % opt.checkpoint_every == 0 &&
            completed < opt.exponent)
            write_checkpoint_file(ckpt, m, opt.exponent, completed);
        if (opt.progress)
            *opt.progress << "squaring " << completed << "/" << opt.exponent << " ("
                          << elapsed() << " s)\n";
    }
    write_jump_matrix_file(opt.out, m, opt.exponent);
    std::filesystem::remove(ckpt);
    if (opt.progress)
        *opt.progress << "wrote " << opt.out.string() << " (" << elapsed() << " s)\n";
}

} // namespace vmt19937
