#ifndef APSK_BOUNDS_HPP
#define APSK_BOUNDS_HPP

#include <vector>

#include "apsk/estimators.hpp"

namespace apsk {

// One (SNR, L) operating point: coherent capacity, both bounds on the
// effective noncoherent capacity, and the phase-information terms they were
// assembled from. All values in bits/symbol; each term carries its MC std
// error.
struct BoundsRow {
    double snr_db = 0.0;
    int block_len = 0;

    double coherent_bits = 0.0;
    double coherent_se = 0.0;

    double upper_bits = 0.0;
    double upper_se = 0.0;
    double lower_bits = 0.0;      // clamped at 0
    double lower_raw_bits = 0.0;  // unclamped
    double lower_se = 0.0;

    double i_theta_r_disc = 0.0;
    double i_theta_r_disc_se = 0.0;
    double i_theta_r_cont = 0.0;
    double i_theta_r_cont_se = 0.0;
    double i_theta_rs_disc = 0.0;
    double i_theta_rs_disc_se = 0.0;
    double i_theta_rs_cont = 0.0;
    double i_theta_rs_cont_se = 0.0;
};

// Compute every term for one (SNR, L) point and assemble both bounds:
//   upper = C_c + [I(theta;R)_disc  - I(theta;R|S)_disc ] / (L - 1)
//   lower = C_c + [I(theta;r0)_cont - I(theta;R|S)_cont ] / (L - 1)
// block_len must be >= 2.
BoundsRow compute_bounds_row(const Constellation& c, int block_len,
                             const ChannelParams& ch, const McConfig& mc,
                             AmplitudeMode mode = AmplitudeMode::literal);

// Upper-bound / lower-bound views of compute_bounds_row (same row, per-side
// entry points).
BoundsRow upper_bound(const Constellation& c, int block_len, const ChannelParams& ch,
                      const McConfig& mc, AmplitudeMode mode = AmplitudeMode::literal);
BoundsRow lower_bound(const Constellation& c, int block_len, const ChannelParams& ch,
                      const McConfig& mc, AmplitudeMode mode = AmplitudeMode::literal);

// One row per (L, SNR) pair, SNR-major order. Each pair gets a substream
// derived from (stream, L index, SNR index), so the grid can be evaluated in
// any order on any number of workers with identical results.
std::vector<BoundsRow> bounds_curve(const Constellation& c,
                                    const std::vector<int>& block_lens,
                                    const std::vector<double>& snr_grid_db,
                                    const McConfig& mc,
                                    AmplitudeMode mode = AmplitudeMode::literal);

}  // namespace apsk

#endif
