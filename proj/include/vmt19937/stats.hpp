#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vmt19937 {

// Result of one statistical smoke test. p_value is uniform on [0,1] under
// the null for right-tail statistics (chi-square) and folds both tails for
// symmetric ones (monobit, correlation), where extreme disagreement drives
// p toward 0.
struct StatReport {
    std::string name;
    std::uint64_t samples = 0;
    double statistic = 0.0;
    double p_value = 0.0;
    bool pass = false;
};

// Significance used by the pass flags (TestU01's customary suspect level).
inline constexpr double kSignificance = 0.001;

using WordSource = std::function<std::uint32_t()>;

// Bit balance over 32*count bits: z-statistic of ones minus zeros against
// N(0,1), folded two-sided p = erfc(|z|/sqrt(2)). Requires count >= 10^6.
StatReport monobit(const WordSource& source, std::uint64_t count);

// 256-bin chi-square over the 4*count bytes, 255 degrees of freedom,
// right-tail p via the regularized incomplete gamma. Suspect on both tails:
// pass iff p in [kSignificance/2, 1 - kSignificance/2]. Requires at least
// 50 expected bytes per bin.
StatReport chi2_bytes(const WordSource& source, std::uint64_t count);

// Max absolute pairwise correlation between the lane outputs mapped to
// uniforms; passes when max |rho| < 4/sqrt(count). Requires >= 2 lanes.
StatReport lane_cross_correlation(const std::vector<WordSource>& lanes,
                                  std::uint64_t count);

namespace detail {
// Regularized upper incomplete gamma Q(a, x); series/continued-fraction
// evaluation, absolute accuracy well under 1e-10 over the tested range.
double regularized_gamma_q(double a, double x);
} // namespace detail

} // namespace vmt19937
