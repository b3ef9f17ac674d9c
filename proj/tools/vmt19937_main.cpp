#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmt19937/bench.hpp"
#include "vmt19937/engine.hpp"
#include "vmt19937/jump_file.hpp"
#include "vmt19937/stats.hpp"

namespace {

using namespace vmt19937;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ResolvedJump {
    F2Matrix matrix;
    unsigned exponent;
};

// Locates the de-phasing matrix: an explicit file wins (adopting its
// exponent unless the request contradicts it), then VMT_JUMP_DIR, then
// (for small exponents) an in-process computation from scratch.
ResolvedJump resolve_jump(const std::string& file, std::optional<unsigned> requested,
                          unsigned fallback) {
    if (!file.empty()) {
        LoadedJumpMatrix m = read_jump_matrix_file(file);
        if (requested && *requested != m.exponent)
            throw std::runtime_error(file + ": holds exponent " + std::to_string(m.exponent) +
                                     ", requested " + std::to_string(*requested));
        return {std::move(m.matrix), m.exponent};
    }
    const unsigned exponent = requested ? *requested : fallback;
    if (const char* dir = std::getenv("VMT_JUMP_DIR")) {
        const auto path = std::filesystem::path(dir) / jump_matrix_file_name(exponent);
        if (std::filesystem::exists(path)) {
            LoadedJumpMatrix m = read_jump_matrix_file(path);
            if (m.exponent == exponent)
                return {std::move(m.matrix), exponent};
        }
    }
    constexpr unsigned kMaxInProcess = 26;
    if (exponent > kMaxInProcess)
        throw std::runtime_error("no precomputed matrix for exponent " +
                                 std::to_string(exponent) +
                                 "; compute one with the jump command (VMT_JUMP_DIR)");
    if (exponent > 12)
        std::cerr << "note: computing the 2^" << exponent
                  << " jump matrix in process; this can take minutes\n";
    return {mat_pow2(build_transition_matrix(mt19937_params()), exponent), exponent};
}

struct BenchFlags {
    std::string generator = "vmt";
    unsigned lanes = 1;
    std::string block = "1";
    std::uint64_t count = 100000000;
    std::uint32_t seed = 5489;
    std::optional<unsigned> jump_exponent;
    std::string jump_matrix_file;
    std::string format = "table";
};

int run_bench(const BenchFlags& f) {
    BenchConfig cfg;
    if (f.generator == "scalar") {
        cfg.generator = BenchGenerator::kScalar;
        if (f.lanes != 1) {
            std::cerr << "error: --lanes applies to the vmt generator only\n";
            return kExitUsage;
        }
        if (f.block != "1") {
            std::cerr << "error: the scalar generator only supports --block 1\n";
            return kExitUsage;
        }
    } else {
        cfg.generator = BenchGenerator::kVmt;
    }
    cfg.lanes = f.lanes;
    if (f.block == "1")
        cfg.block = QueryMode::kSingle;
    else if (f.block == "16")
        cfg.block = QueryMode::kBlock16;
    else if (f.block == "state")
        cfg.block = QueryMode::kStateBlock;
    else {
        std::cerr << "error: --block must be 1, 16 or state\n";
        return kExitUsage;
    }
    cfg.count = f.count;
    cfg.seed = f.seed;
    cfg.jump_exponent = f.jump_exponent.value_or(0);

    F2Matrix jump;
    if (cfg.generator == BenchGenerator::kVmt && cfg.lanes > 1) {
        ResolvedJump r = resolve_jump(f.jump_matrix_file, f.jump_exponent, 0);
        jump = std::move(r.matrix);
        cfg.jump_matrix = &jump;
        cfg.jump_exponent = r.exponent;
    }

    const BenchResult r = run_benchmark(cfg);
    const std::string gen = cfg.generator == BenchGenerator::kScalar ? "scalar" : "vmt";
    // state mode reports the concrete block size (624 words per lane)
    const std::string block_label = cfg.block == QueryMode::kStateBlock
                                        ? std::to_string(624 * cfg.lanes)
                                        : f.block;
    if (f.format == "csv") {
        std::printf("%s,%u,%s,%llu,%.6f,%.0f,0x%08X\n", gen.c_str(), cfg.lanes,
                    block_label.c_str(), (unsigned long long)cfg.count, r.seconds,
                    r.words_per_sec, r.checksum);
    } else {
        std::printf("%-9s %-3u %-6s %-12llu %-10.4f %-14.3e 0x%08X\n", gen.c_str(),
                    cfg.lanes, block_label.c_str(), (unsigned long long)cfg.count,
                    r.seconds, r.words_per_sec, r.checksum);
    }
    return kExitOk;
}

struct StatFlags {
    unsigned lanes = 4;
    std::uint64_t count = 10000000;
    std::string tests = "monobit,chi2,lanecorr";
    std::uint32_t seed = 5489;
    std::optional<unsigned> jump_exponent;
    std::string jump_matrix_file;
    bool self_test = false;
};

// Smallest de-phasing that keeps the lanes' stream windows disjoint over
// the whole sample, so pooled statistics never see a value twice.
unsigned stat_auto_exponent(std::uint64_t count, unsigned lanes) {
    unsigned q = 10;
    while ((std::uint64_t(lanes) << q) < count && q < 19937)
        ++q;
    return q;
}

void print_report(const StatReport& r) {
    std::printf("%-24s samples=%-10llu stat=%-14.6g p=%-12.6g %s\n", r.name.c_str(),
                (unsigned long long)r.samples, r.statistic, r.p_value,
                r.pass ? "PASS" : "FAIL");
}

int run_stat(const StatFlags& f) {
    std::vector<std::string> selected;
    {
        std::string cur;
        for (char ch : f.tests + ",") {
            if (ch == ',') {
                if (!cur.empty())
                    selected.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
    }
    for (const auto& name : selected)
        if (name != "monobit" && name != "chi2" && name != "lanecorr") {
            std::cerr << "error: unknown test '" << name
                      << "' (available: monobit, chi2, lanecorr)\n";
            return kExitUsage;
        }
    if (selected.empty()) {
        std::cerr << "error: no tests selected\n";
        return kExitUsage;
    }

    std::vector<StatReport> reports;

    if (f.self_test) {
        // Degenerate constant source; the battery must flag it.
        WordSource constant = [] { return 0xDEADBEEFu; };
        for (const auto& name : selected) {
            if (name == "monobit")
                reports.push_back(monobit(constant, f.count));
            else if (name == "chi2")
                reports.push_back(chi2_bytes(constant, f.count));
            else
                reports.push_back(lane_cross_correlation(
                    {constant, constant}, std::max<std::uint64_t>(f.count / 16, 1000)));
        }
    } else {
        unsigned exponent =
            f.jump_exponent ? *f.jump_exponent : stat_auto_exponent(f.count, f.lanes);
        F2Matrix jump;
        const F2Matrix* jp = nullptr;
        if (f.lanes > 1) {
            ResolvedJump r = resolve_jump(f.jump_matrix_file, f.jump_exponent,
                                          stat_auto_exponent(f.count, f.lanes));
            jump = std::move(r.matrix);
            jp = &jump;
            exponent = r.exponent;
        }
        VmtConfig cfg(f.lanes, QueryMode::kSingle, exponent);
        cfg.validate();
        auto fresh = [&] {
            return jp ? VmtGenerator(f.seed, cfg, *jp) : VmtGenerator(f.seed);
        };
        for (const auto& name : selected) {
            if (name == "monobit") {
                auto gen = std::make_shared<VmtGenerator>(fresh());
                reports.push_back(monobit([gen] { return gen->next_u32(); }, f.count));
            } else if (name == "chi2") {
                auto gen = std::make_shared<VmtGenerator>(fresh());
                reports.push_back(chi2_bytes([gen] { return gen->next_u32(); }, f.count));
            } else {
                if (f.lanes < 2) {
                    std::cerr << "error: lanecorr needs --lanes >= 2\n";
                    return kExitUsage;
                }
                // Per-lane streams: independently de-phased scalar states.
                auto lanes_states = make_dephased_states(
                    Mt19937(f.seed), JumpSpec{exponent, f.lanes}, jump);
                std::vector<WordSource> sources;
                for (auto& st : lanes_states) {
                    auto lane = std::make_shared<Mt19937>(st);
                    lane->regenerate();
                    sources.push_back([lane] { return lane->next_u32(); });
                }
                reports.push_back(lane_cross_correlation(
                    sources, std::min<std::uint64_t>(f.count, 1000000)));
            }
        }
    }

    bool all_pass = true;
    for (const auto& r : reports) {
        print_report(r);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"VMT19937: vectorized MT19937 stream generator tools"};
    app.require_subcommand(1);

    // jump: offline computation of de-phasing matrices
    auto* jump = app.add_subcommand("jump", "compute a jump matrix (transition matrix "
                                            "raised to the 2^q-th power)");
    JumpComputeOptions jopt;
    std::string resume_path;
    jump->add_option("-q,--exponent", jopt.exponent, "power-of-two exponent q")->required();
    std::string out_path;
    jump->add_option("-o,--out", out_path, "output file")->required();
    jump->add_option("--checkpoint-every", jopt.checkpoint_every,
                     "squarings between checkpoints (0 disables)")
        ->default_val(64);
    jump->add_option("--resume", resume_path, "resume from a checkpoint file");
    jump->add_option("--threads", jopt.workers, "worker threads (0 = hardware)")
        ->default_val(0);

    // bench: throughput measurement
    auto* bench = app.add_subcommand("bench", "measure generation throughput");
    BenchFlags bf;
    bench->add_option("--generator", bf.generator, "scalar or vmt")
        ->check(CLI::IsMember({"scalar", "vmt"}))
        ->default_val("vmt");
    bench->add_option("-M,--lanes", bf.lanes, "interleaved streams (1,2,4,8,16)")
        ->default_val(1);
    bench->add_option("--block", bf.block, "query block: 1, 16 or state")->default_val("1");
    bench->add_option("-n,--count", bf.count, "words to generate")->default_val(100000000);
    bench->add_option("--seed", bf.seed, "seed")->default_val(5489);
    bench->add_option("--jump-exponent", bf.jump_exponent,
                      "de-phasing exponent q, lane t skips t*2^q values (default 0, "
                      "or the matrix file's exponent)");
    bench->add_option("--jump-matrix", bf.jump_matrix_file, "precomputed jump-matrix file");
    bench->add_option("--format", bf.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}))
        ->default_val("table");

    // stat: statistical smoke tests
    auto* stat = app.add_subcommand("stat", "run statistical smoke tests");
    StatFlags sf;
    stat->add_option("-M,--lanes", sf.lanes, "interleaved streams (1,2,4,8,16)")
        ->default_val(4);
    stat->add_option("-n,--count", sf.count, "words per test")->default_val(10000000);
    stat->add_option("--tests", sf.tests, "comma list: monobit,chi2,lanecorr")
        ->default_val("monobit,chi2,lanecorr");
    stat->add_option("--seed", sf.seed, "seed")->default_val(5489);
    stat->add_option("--jump-exponent", sf.jump_exponent,
                     "de-phasing exponent q (default: smallest with disjoint windows)");
    stat->add_option("--jump-matrix", sf.jump_matrix_file, "precomputed jump-matrix file");
    stat->add_flag("--self-test", sf.self_test,
                   "run against a constant source; all tests must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (jump->parsed()) {
            jopt.out = out_path;
            if (!resume_path.empty())
                jopt.resume = resume_path;
            jopt.progress = &std::cerr;
            compute_jump_matrix(jopt);
            return kExitOk;
        }
        if (bench->parsed())
            return run_bench(bf);
        return run_stat(sf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
