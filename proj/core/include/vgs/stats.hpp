#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vgs {

struct Summary {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;  // mean of the two middle values for even counts
};

// nullopt for an empty sample.
std::optional<Summary> summarize(std::span<const double> values);

// Population skewness m3 / m2^1.5; nullopt when fewer than 2 values or zero variance.
std::optional<double> skewness(std::span<const double> values);

// Hurwitz zeta sum_{k>=0} (q + k)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

// Discrete power-law exponent by maximum likelihood over values >= k_min.
// nullopt when fewer than `min_samples` values qualify or they are all equal.
std::optional<double> fit_powerlaw_exponent(std::span<const std::uint32_t> values,
                                            std::uint32_t k_min = 2,
                                            std::size_t min_samples = 50);

// Empirical CDF support: each distinct value with the fraction of samples <= it.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values);

}  // namespace vgs
