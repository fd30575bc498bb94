#include "apsk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace apsk {
namespace {

double log_i0_series(double x) {
    // ln(1 + s), s = sum_{k>=1} (x^2/4)^k / (k!)^2. All terms positive, no
    // cancellation; log1p keeps full relative accuracy when s is tiny.
    const double q = 0.25 * x * x;
    double term = 1.0;
    double tail = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        tail += term;
        if (term < (1.0 + tail) * 1e-17) break;
    }
    return std::log1p(tail);
}

double log_i0_asymptotic(double x) {
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k c_k / x^k with
    // c_k = prod_{j=1..k} (2j-1)^2 / (k! 8^k). The series is divergent;
    // truncate at the smallest term.
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        if (term >= prev) break;
        sum += term;
        prev = term;
        if (term < sum * 1e-17) break;
    }
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

}  // namespace

double log_bessel_i0(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("log_bessel_i0: x must be finite and >= 0");
    }
    if (x < kLogBesselI0Seam) return log_i0_series(x);
    return log_i0_asymptotic(x);
}

double log_sum_exp(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("log_sum_exp: empty input");
    }
    const double m = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(m)) return m;  // all -inf (or a stray +inf)
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - m);
    return m + std::log(sum);
}

double log_sum_exp(const std::vector<double>& values) {
    return log_sum_exp(std::span<const double>(values));
}

}  // namespace apsk
