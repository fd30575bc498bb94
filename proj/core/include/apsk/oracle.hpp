#ifndef APSK_ORACLE_HPP
#define APSK_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <span>

#include "apsk/estimators.hpp"

namespace apsk {

// ln P(R|S) for the block noncoherent channel with the phase marginalized:
//   -L ln(2 pi sigma^2) - sum(|r_l|^2 + |s_l|^2)/(2 sigma^2)
//   + ln I0(|sum r_l conj(s_l)| / sigma^2).
double log_likelihood_block(std::span<const std::complex<double>> r,
                            std::span<const std::complex<double>> s,
                            double sigma_sq);

inline constexpr std::uint64_t kDefaultOracleBudget = 65536;

// Brute-force Monte Carlo estimate of the exact effective block AMI, the
// ground truth the bounds are validated against. Draws (S, theta, noise),
// scores log2 P(R|S) against the marginal over every candidate block sharing
// the reference symbol s0 (the symbol overlapped with the previous block and
// hence already known at the detector), and normalizes per symbol by
// (L - 1). Feasible only while M^L stays within `budget`.
CapacityEstimate exact_block_ami(const Constellation& c, int block_len,
                                 const ChannelParams& ch, const McConfig& mc,
                                 std::uint64_t budget = kDefaultOracleBudget);

}  // namespace apsk

#endif
