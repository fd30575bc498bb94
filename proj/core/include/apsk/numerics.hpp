#ifndef APSK_NUMERICS_HPP
#define APSK_NUMERICS_HPP

#include <span>
#include <vector>

namespace apsk {

// ln I0(x) for x >= 0, accurate to ~1e-10 relative over the whole range and
// free of overflow up to x = 1e8 and beyond. Power series below the seam,
// asymptotic expansion ln I0(x) ~ x - ln(2*pi*x)/2 + ln(1 + 1/(8x) + ...)
// above it.
double log_bessel_i0(double x);

// Crossover between the series and asymptotic branches of log_bessel_i0.
inline constexpr double kLogBesselI0Seam = 20.0;

// ln(sum exp(v_i)) via max shift. Throws std::invalid_argument on an empty
// input. -inf elements are absorbed.
double log_sum_exp(std::span<const double> values);

double log_sum_exp(const std::vector<double>& values);

}  // namespace apsk

#endif
