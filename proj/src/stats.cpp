#include "vmt19937/stats.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vmt19937 {

namespace detail {

namespace {

// Lower-tail series: P(a,x) = gamma(a,x)/Gamma(a).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-tail continued fraction (modified Lentz).
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::invalid_argument("regularized_gamma_q domain");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

} // namespace detail

StatReport monobit(const WordSource& source, std::uint64_t count) {
    if (count < 1000000)
        throw std::invalid_argument("monobit needs at least 10^6 words");
    std::int64_t ones = 0;
    for (std::uint64_t i = 0; i < count; ++i)
        ones += std::popcount(source());
    const double nbits = double(count) * 32.0;
    const double excess = 2.0 * double(ones) - nbits; // ones - zeros
    const double z = excess / std::sqrt(nbits);
    StatReport r;
    r.name = "monobit";
    r.samples = count;
    r.statistic = z;
    r.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
    r.pass = r.p_value >= kSignificance;
    return r;
}

StatReport chi2_bytes(const WordSource& source, std::uint64_t count) {
    if (count * 4 < 256 * 50)
        throw std::invalid_argument("chi2_bytes needs at least 50 expected bytes per bin");
    std::uint64_t bins[256] = {};
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t w = source();
        ++bins[w & 0xFF];
        ++bins[(w >> 8) & 0xFF];
        ++bins[(w >> 16) & 0xFF];
        ++bins[(w >> 24) & 0xFF];
    }
    const double expected = double(count) * 4.0 / 256.0;
    double stat = 0.0;
    for (std::uint64_t b : bins) {
        const double d = double(b) - expected;
        stat += d * d / expected;
    }
    StatReport r;
    r.name = "chi2_bytes";
    r.samples = count;
    r.statistic = stat;
    r.p_value = detail::regularized_gamma_q(255.0 / 2.0, stat / 2.0);
    r.pass = r.p_value >= kSignificance / 2.0 && r.p_value <= 1.0 - kSignificance / 2.0;
    return r;
}

StatReport lane_cross_correlation(const std::vector<WordSource>& lanes,
                                  std::uint64_t count) {
    const std::size_t m = lanes.size();
    if (m < 2)
        throw std::invalid_argument("lane_cross_correlation needs at least 2 lanes");
    std::vector<std::vector<double>> u(m);
    for (std::size_t t = 0; t < m; ++t) {
        u[t].resize(count);
        for (std::uint64_t i = 0; i < count; ++i)
            u[t][i] = (double(lanes[t]()) + 0.5) / 4294967296.0;
    }
    std::vector<double> mean(m, 0.0), var(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        for (double x : u[t])
            mean[t] += x;
        mean[t] /= double(count);
        for (double x : u[t])
            var[t] += (x - mean[t]) * (x - mean[t]);
    }
    double max_rho = 0.0;
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s + 1; t < m; ++t) {
            double cov = 0.0;
            for (std::uint64_t i = 0; i < count; ++i)
                cov += (u[s][i] - mean[s]) * (u[t][i] - mean[t]);
            const double denom = std::sqrt(var[s] * var[t]);
            const double rho = denom > 0.0 ? cov / denom : 1.0;
            max_rho = std::max(max_rho, std::abs(rho));
        }
    StatReport r;
    r.name = "lane_cross_correlation";
    r.samples = count;
    r.statistic = max_rho;
    r.p_value = std::erfc(max_rho * std::sqrt(double(count)) / std::sqrt(2.0));
    r.pass = max_rho < 4.0 / std::sqrt(double(count));
    return r;
}

} // namespace vmt19937
