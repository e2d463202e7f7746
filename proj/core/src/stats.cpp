#include "vgs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "vgs/errors.hpp"

namespace vgs {

std::optional<Summary> summarize(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    Summary s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
    const std::size_t mid = s.count / 2;
    s.median = s.count % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return s;
}

std::optional<double> skewness(std::span<const double> values) {
    if (values.size() < 2) return std::nullopt;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) return std::nullopt;
    return m3 / std::pow(m2, 1.5);
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw DomainError("hurwitz_zeta needs s > 1 and q > 0");
    // Euler-Maclaurin: direct sum of the first N terms plus the tail integral
    // and Bernoulli corrections.
    constexpr int kDirect = 12;
    constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                                     -691.0 / 2730, 7.0 / 6};
    double sum = 0.0;
    for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
    const double a = q + kDirect;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);

    // term_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * a^(-s-2j+1)
    double rising = s;                 // s (s+1) ... (s+2j-2)
    double factorial = 2.0;            // (2j)!
    double power = std::pow(a, -s - 1.0);
    for (int j = 1; j <= 7; ++j) {
        sum += kBernoulli[j - 1] / factorial * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        factorial *= (2.0 * j + 1) * (2.0 * j + 2);
        power /= a * a;
    }
    return sum;
}

std::optional<double> fit_powerlaw_exponent(std::span<const std::uint32_t> values,
                                            std::uint32_t k_min, std::size_t min_samples) {
    if (k_min == 0) throw DomainError("power-law k_min must be >= 1");
    std::size_t n = 0;
    double log_sum = 0.0;
    std::uint32_t lo = UINT32_MAX;
    std::uint32_t hi = 0;
    for (std::uint32_t v : values) {
        if (v < k_min) continue;
        ++n;
        log_sum += std::log(static_cast<double>(v));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (n < min_samples || n == 0 || lo == hi) return std::nullopt;

    const double count = static_cast<double>(n);
    const double q = static_cast<double>(k_min);
    const auto neg_log_likelihood = [&](double gamma) {
        return gamma * log_sum + count * std::log(hurwitz_zeta(gamma, q));
    };
    const auto [gamma, value] =
        boost::math::tools::brent_find_minima(neg_log_likelihood, 1.0 + 1e-6, 20.0, 40);
    (void)value;
    return gamma;
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        out.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

}  // namespace vgs
