#ifndef APSK_ESTIMATORS_HPP
#define APSK_ESTIMATORS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

#include "apsk/constellation.hpp"
#include "apsk/random.hpp"

namespace apsk {

// Channel operating point. sigma_sq is the variance per real/imaginary
// component, sigma^2 = N0/2, with N0 = avg_energy / 10^(snr_db/10).
struct ChannelParams {
    double snr_db = 0.0;
    double n0 = 1.0;
    double sigma_sq = 0.5;

    static ChannelParams from_snr_db(double snr_db, double avg_energy = 1.0);
};

struct McConfig {
    std::uint64_t samples = 100000;
    StreamSpec stream;
    std::uint64_t chunk_size = 8192;
    // 0 = use hardware concurrency. Thread count never changes results.
    unsigned threads = 0;
};

struct CapacityEstimate {
    double mean_bits = 0.0;
    double std_error = 0.0;
    std::uint64_t samples_used = 0;
};

enum class ThetaModel { discrete, continuous };

// How the known-input phase term handles mixed-amplitude blocks:
// literal    - average the single-symbol term over ring amplitudes a_k at
//              noise variance sigma^2 / L (amplitude a_k * sqrt(L)),
// exact_block- use the matched-filter amplitude ||A|| = sqrt(sum a_l^2)
//              averaged over i.i.d. amplitude vectors.
enum class AmplitudeMode { literal, exact_block };

// Run a Monte Carlo mean/std-error over mc.samples draws of sample_fn.
// Sample i always sees the generator CounterRng(mc.stream, i); chunk size and
// thread count only affect scheduling, never the estimate.
CapacityEstimate run_mc(const McConfig& mc,
                        const std::function<double(CounterRng&)>& sample_fn);

// Uniform-input AMI of an arbitrary point set over coherent AWGN, in
// bits/symbol:
//   log2 M - E[ log2 sum_j exp((|n|^2 - |s_k + n - s_j|^2) / (2 sigma^2)) ].
CapacityEstimate coherent_capacity_points(std::span<const std::complex<double>> points,
                                          const ChannelParams& ch, const McConfig& mc);

CapacityEstimate coherent_capacity(const Constellation& c, const ChannelParams& ch,
                                   const McConfig& mc);

// I(theta; r) for theta uniform over `phases` discrete values at the given
// amplitude; by rotational symmetry this is the coherent capacity of P-PSK
// at that amplitude.
CapacityEstimate psk_phase_info_discrete(double amplitude, int phases,
                                         const ChannelParams& ch, const McConfig& mc);

// I(theta; r) for theta continuous uniform on [0, 2*pi):
//   E[ (|r|^2 + a^2 - |n|^2) / (2 sigma^2 ln 2) - log2 I0(a |r| / sigma^2) ].
CapacityEstimate phase_info_continuous(double amplitude, const ChannelParams& ch,
                                       const McConfig& mc);

// I(theta; r0): ring-uniform average of the per-amplitude phase information
// at the base noise level.
CapacityEstimate phase_info_r0(const Constellation& c, const ChannelParams& ch,
                               ThetaModel theta_model, const McConfig& mc);

// I(theta; R | S): per-amplitude phase information with the SNR boosted by
// the block length (sigma^2 -> sigma^2 / L). block_len == 1 is permitted for
// consistency checks and reduces to phase_info_r0.
CapacityEstimate phase_info_given_s(const Constellation& c, int block_len,
                                    const ChannelParams& ch, ThetaModel theta_model,
                                    const McConfig& mc,
                                    AmplitudeMode mode = AmplitudeMode::literal);

}  // namespace apsk

#endif
