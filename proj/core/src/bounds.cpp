#include "apsk/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace apsk {
namespace {

// Per-term substream tags within one (SNR, L) point.
enum Term : std::uint64_t {
    kCoherent = 0,
    kR0Discrete = 1,
    kR0Continuous = 2,
    kGivenSDiscrete = 3,
    kGivenSContinuous = 4,
};

McConfig term_stream(const McConfig& mc, std::uint64_t tag) {
    McConfig out = mc;
    out.stream = substream(mc.stream, tag);
    return out;
}

}  // namespace

BoundsRow compute_bounds_row(const Constellation& c, int block_len,
                             const ChannelParams& ch, const McConfig& mc,
                             AmplitudeMode mode) {
    if (block_len < 2) {
        throw std::invalid_argument("bounds: block_len must be >= 2 (one-symbol overlap)");
    }

    BoundsRow row;
    row.snr_db = ch.snr_db;
    row.block_len = block_len;

    const CapacityEstimate cc = coherent_capacity(c, ch, term_stream(mc, kCoherent));
    const CapacityEstimate r0d =
        phase_info_r0(c, ch, ThetaModel::discrete, term_stream(mc, kR0Discrete));
    const CapacityEstimate r0c =
        phase_info_r0(c, ch, ThetaModel::continuous, term_stream(mc, kR0Continuous));
    const CapacityEstimate gsd = phase_info_given_s(c, block_len, ch, ThetaModel::discrete,
                                                    term_stream(mc, kGivenSDiscrete), mode);
    const CapacityEstimate gsc = phase_info_given_s(c, block_len, ch, ThetaModel::continuous,
                                                    term_stream(mc, kGivenSContinuous), mode);

    row.coherent_bits = cc.mean_bits;
    row.coherent_se = cc.std_error;
    row.i_theta_r_disc = r0d.mean_bits;
    row.i_theta_r_disc_se = r0d.std_error;
    row.i_theta_r_cont = r0c.mean_bits;
    row.i_theta_r_cont_se = r0c.std_error;
    row.i_theta_rs_disc = gsd.mean_bits;
    row.i_theta_rs_disc_se = gsd.std_error;
    row.i_theta_rs_cont = gsc.mean_bits;
    row.i_theta_rs_cont_se = gsc.std_error;

    const double overlap = static_cast<double>(block_len - 1);
    row.upper_bits = cc.mean_bits + (r0d.mean_bits - gsd.mean_bits) / overlap;
    row.upper_se = std::sqrt(cc.std_error * cc.std_error +
                             (r0d.std_error * r0d.std_error + gsd.std_error * gsd.std_error) /
                                 (overlap * overlap));
    row.lower_raw_bits = cc.mean_bits + (r0c.mean_bits - gsc.mean_bits) / overlap;
    row.lower_se = std::sqrt(cc.std_error * cc.std_error +
                             (r0c.std_error * r0c.std_error + gsc.std_error * gsc.std_error) /
                                 (overlap * overlap));
    row.lower_bits = std::max(0.0, row.lower_raw_bits);
    return row;
}

BoundsRow upper_bound(const Constellation& c, int block_len, const ChannelParams& ch,
                      const McConfig& mc, AmplitudeMode mode) {
    return compute_bounds_row(c, block_len, ch, mc, mode);
}

BoundsRow lower_bound(const Constellation& c, int block_len, const ChannelParams& ch,
                      const McConfig& mc, AmplitudeMode mode) {
    return compute_bounds_row(c, block_len, ch, mc, mode);
}

std::vector<BoundsRow> bounds_curve(const Constellation& c,
                                    const std::vector<int>& block_lens,
                                    const std::vector<double>& snr_grid_db,
                                    const McConfig& mc, AmplitudeMode mode) {
    if (block_lens.empty() || snr_grid_db.empty()) {
        throw std::invalid_argument("bounds_curve: empty grid");
    }
    for (int l : block_lens) {
        if (l < 2) throw std::invalid_argument("bounds_curve: block lengths must be >= 2");
    }

    std::vector<BoundsRow> rows;
    rows.reserve(block_lens.size() * snr_grid_db.size());
    for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
        const ChannelParams ch = ChannelParams::from_snr_db(snr_grid_db[si], c.avg_energy);
        for (std::size_t li = 0; li < block_lens.size(); ++li) {
            McConfig cell_mc = mc;
            cell_mc.stream = substream(substream(mc.stream, li), si);
            rows.push_back(compute_bounds_row(c, block_lens[li], ch, cell_mc, mode));
        }
    }
    return rows;
}

}  // namespace apsk
