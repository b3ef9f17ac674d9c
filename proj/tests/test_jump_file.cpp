#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "vmt19937/jump_file.hpp"
#include "vmt19937/mt19937.hpp"

using namespace vmt19937;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vmtj_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

F2Matrix random_matrix(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    F2Matrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (rng() & 1)
                m.set(r, c);
    return m;
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("jump-matrix files round-trip byte-identically") {
    TempDir dir;
    const F2Matrix m = random_matrix(150, 1);
    const fs::path p1 = dir.path / "a.vmtj";
    const fs::path p2 = dir.path / "b.vmtj";

    write_jump_matrix_file(p1, m, 12);
    const LoadedJumpMatrix r = read_jump_matrix_file(p1);
    CHECK(r.exponent == 12);
    CHECK(r.matrix == m);

    write_jump_matrix_file(p2, r.matrix, r.exponent);
    CHECK(slurp(p1) == slurp(p2));

    // header + dim * ceil(dim/64) * 8 payload
    CHECK(fs::file_size(p1) == 20 + 150 * 3 * 8);
}

TEST_CASE("the reader rejects malformed files") {
    TempDir dir;
    const fs::path p = dir.path / "x.vmtj";

    {
        std::ofstream os(p, std::ios::binary);
        os << "NOPE";
    }
    CHECK_THROWS_AS(read_jump_matrix_file(p), std::runtime_error);

    const F2Matrix m = random_matrix(64, 2);
    write_jump_matrix_file(p, m, 3);
    // truncate the payload
    fs::resize_file(p, fs::file_size(p) - 8);
    CHECK_THROWS_AS(read_jump_matrix_file(p), std::runtime_error);

    CHECK_THROWS_AS(read_jump_matrix_file(dir.path / "missing.vmtj"), std::runtime_error);
}

TEST_CASE("the reader rejects dirty padding bits") {
    TempDir dir;
    const fs::path p = dir.path / "pad.vmtj";
    const F2Matrix m = random_matrix(70, 3); // 58 padding bits per row
    write_jump_matrix_file(p, m, 1);
    {
        std::fstream f(p, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(20 + 8 + 7); // top byte of row 0's second word
        const char bad = char(0x80);
        f.write(&bad, 1);
    }
    CHECK_THROWS_AS(read_jump_matrix_file(p), std::runtime_error);
}

TEST_CASE("checkpoints round-trip and validate their counters") {
    TempDir dir;
    const fs::path p = dir.path / "c.ckpt";
    const F2Matrix m = random_matrix(130, 4);

    write_checkpoint_file(p, m, 10, 6);
    const LoadedCheckpoint c = read_checkpoint_file(p);
    CHECK(c.target_exponent == 10);
    CHECK(c.completed == 6);
    CHECK(c.matrix == m);

    write_checkpoint_file(p, m, 5, 6); // completed beyond the target
    CHECK_THROWS_AS(read_checkpoint_file(p), std::runtime_error);

    // a checkpoint is not a valid matrix file (extra counter field)
    write_checkpoint_file(p, m, 10, 6);
    CHECK_THROWS_AS(read_jump_matrix_file(p), std::runtime_error);
}

TEST_CASE("exponent-zero computation writes the transition matrix itself") {
    TempDir dir;
    const fs::path out = dir.path / "F_2p0.vmtj";
    JumpComputeOptions opt;
    opt.exponent = 0;
    opt.out = out;
    compute_jump_matrix(opt);

    const LoadedJumpMatrix r = read_jump_matrix_file(out);
    CHECK(r.exponent == 0);
    CHECK(r.matrix == build_transition_matrix(mt19937_params()));
}

TEST_CASE("resumed ladders finish byte-identically") {
    TempDir dir;
    const fs::path full = dir.path / "full.vmtj";
    const fs::path resumed = dir.path / "resumed.vmtj";

    JumpComputeOptions opt;
    opt.exponent = 6;
    opt.out = full;
    opt.checkpoint_every = 0;
    compute_jump_matrix(opt);

    // as if interrupted after squaring 3
    const F2Matrix mid = mat_pow2(build_transition_matrix(mt19937_params()), 3);
    const fs::path ckpt = dir.path / "mid.ckpt";
    write_checkpoint_file(ckpt, mid, 6, 3);

    opt.out = resumed;
    opt.resume = ckpt;
    compute_jump_matrix(opt);

    CHECK(slurp(full) == slurp(resumed));
}

TEST_CASE("resume validates the checkpoint target") {
    TempDir dir;
    const F2Matrix mid = mat_pow2(build_transition_matrix(mt19937_params()), 2);
    const fs::path ckpt = dir.path / "mid.ckpt";
    write_checkpoint_file(ckpt, mid, 9, 2);

    JumpComputeOptions opt;
    opt.exponent = 6; // checkpoint says 9
    opt.out = dir.path / "out.vmtj";
    opt.resume = ckpt;
    CHECK_THROWS_AS(compute_jump_matrix(opt), std::runtime_error);
}

TEST_CASE("conventional file names carry the exponent") {
    CHECK(jump_matrix_file_name(19935) == "F_2p19935.vmtj");
}
