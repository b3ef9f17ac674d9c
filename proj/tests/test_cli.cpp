#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

#include "vmt19937/f2_matrix.hpp"
#include "vmt19937/jump_file.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vmt_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// Runs the built binary; args must already be shell-quoted where needed.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    const TempDir dir;
    const fs::path out = dir.path / "out.txt";
    const std::string cmd =
        env + " " + std::string(VMT_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != '\n') {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("bench --block 7 -n 1000").exit_code == 2);
    CHECK(run_cli("bench --generator scalar --block 16 -n 1000").exit_code == 2);
    CHECK(run_cli("bench --generator scalar -M 4 -n 1000").exit_code == 2);
    CHECK(run_cli("stat --tests monobit,nope -n 1000000 -M 1").exit_code == 2);
    CHECK(run_cli("jump -q 4").exit_code == 2); // missing --out
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("bench --help").exit_code == 0);
}

TEST_CASE("scalar and single-lane runs agree on the checksum") {
    const RunResult scalar = run_cli("bench --generator scalar -n 1000000 --format csv");
    const RunResult vmt = run_cli("bench -M 1 -n 1000000 --format csv");
    REQUIRE(scalar.exit_code == 0);
    REQUIRE(vmt.exit_code == 0);
    const auto s = split(scalar.out, ',');
    const auto v = split(vmt.out, ',');
    REQUIRE(s.size() == 7);
    REQUIRE(v.size() == 7);
    CHECK(s[0] == "scalar");
    CHECK(v[0] == "vmt");
    CHECK(s[6] == v[6]); // identical checksum
}

TEST_CASE("state-block runs report the concrete block size") {
    const RunResult r =
        run_cli("bench -M 4 --block state -n 100000 --jump-exponent 0 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto cols = split(r.out, ',');
    REQUIRE(cols.size() == 7);
    CHECK(cols[1] == "4");
    CHECK(cols[2] == "2496");
}

TEST_CASE("checksums are identical across block modes") {
    std::string checksum;
    for (const std::string block : {"1", "16", "state"}) {
        const RunResult r = run_cli("bench -M 8 --block " + block +
                                    " -n 262144 --jump-exponent 0 --format csv");
        REQUIRE(r.exit_code == 0);
        const auto cols = split(r.out, ',');
        REQUIRE(cols.size() == 7);
        if (checksum.empty())
            checksum = cols[6];
        else
            CHECK(cols[6] == checksum);
    }
}

TEST_CASE("jump writes the transition matrix for exponent zero") {
    TempDir dir;
    const fs::path out = dir.path / "F_2p0.vmtj";
    const RunResult r = run_cli("jump -q 0 -o " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto loaded = vmt19937::read_jump_matrix_file(out);
    CHECK(loaded.exponent == 0);
    CHECK(loaded.matrix == vmt19937::build_transition_matrix(vmt19937::mt19937_params()));
}

TEST_CASE("jump refuses a bad resume file") {
    TempDir dir;
    const fs::path bogus = dir.path / "bogus.ckpt";
    std::ofstream(bogus) << "not a checkpoint";
    const RunResult r =
        run_cli("jump -q 4 -o " + (dir.path / "o.vmtj").string() + " --resume " + bogus.string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("stat self-test flags the degenerate source and exits nonzero") {
    const RunResult r = run_cli("stat --self-test -n 1000000 -M 2");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(r.out.find("PASS") == std::string::npos);
}

TEST_CASE("stat battery passes on the generator and respects VMT_JUMP_DIR") {
    TempDir dir;
    // Provide the de-phasing matrix the stat run will ask for (disjoint
    // windows at n=2^20, M=4 need exponent 18).
    const fs::path mat = dir.path / vmt19937::jump_matrix_file_name(18);
    REQUIRE(run_cli("jump -q 18 -o " + mat.string()).exit_code == 0);

    const RunResult viaDir = run_cli("stat -M 4 -n 1048576 --tests monobit,chi2",
                                     "VMT_JUMP_DIR=" + dir.path.string());
    CHECK(viaDir.exit_code == 0);
    CHECK(viaDir.out.find("monobit") != std::string::npos);
    CHECK(viaDir.out.find("chi2_bytes") != std::string::npos);
    CHECK(viaDir.out.find("FAIL") == std::string::npos);

    const RunResult viaFile = run_cli("stat -M 4 -n 1048576 --tests lanecorr --jump-exponent 18 "
                                      "--jump-matrix " +
                                      mat.string());
    CHECK(viaFile.exit_code == 0);
    CHECK(viaFile.out.find("lane_cross_correlation") != std::string::npos);
}
