#include "apsk/sweep.hpp"

#include <algorithm>
#include <stdexcept>

namespace apsk {
namespace {

void check_grids(const SweepSpec& spec) {
    if (spec.r_grid.empty() || spec.snr_grid_db.empty()) {
        throw std::invalid_argument("ring_ratio_sweep: empty grid");
    }
    for (std::size_t i = 0; i < spec.r_grid.size(); ++i) {
        if (!(spec.r_grid[i] > 0.0)) {
            throw std::invalid_argument("ring_ratio_sweep: ring ratios must be > 0");
        }
        if (i > 0 && !(spec.r_grid[i] > spec.r_grid[i - 1])) {
            throw std::invalid_argument("ring_ratio_sweep: r grid must be sorted and distinct");
        }
    }
}

}  // namespace

std::vector<SweepRow> ring_ratio_sweep(const SweepSpec& spec) {
    check_grids(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.r_grid.size() * spec.snr_grid_db.size());

    for (std::size_t si = 0; si < spec.snr_grid_db.size(); ++si) {
        const ChannelParams ch = ChannelParams::from_snr_db(spec.snr_grid_db[si], 1.0);
        // Common random numbers: every r at this SNR shares one stream, so
        // the argmax is resolved against correlated MC noise.
        McConfig cell_mc = spec.mc;
        cell_mc.stream = substream(spec.mc.stream, si);

        const std::size_t first = rows.size();
        for (double r : spec.r_grid) {
            const Constellation c = build_apsk(spec.n_rings, spec.phases_per_ring, r, 1.0,
                                               {}, /*allow_unit_ratio=*/true);
            const CapacityEstimate est = coherent_capacity(c, ch, cell_mc);
            rows.push_back({spec.snr_grid_db[si], r, est.mean_bits, est.std_error, false});
        }

        double best = rows[first].capacity_bits;
        for (std::size_t i = first; i < rows.size(); ++i) {
            best = std::max(best, rows[i].capacity_bits);
        }
        // Ties within 2*se of the maximum are all flagged (flat optimum
        // reported as an interval).
        for (std::size_t i = first; i < rows.size(); ++i) {
            rows[i].is_argmax = rows[i].capacity_bits + 2.0 * rows[i].capacity_se >= best;
        }
    }
    return rows;
}

std::vector<ComparisonRow> capacity_comparison(const std::vector<ComparisonEntry>& entries,
                                               const std::vector<double>& snr_grid_db,
                                               const McConfig& mc) {
    if (entries.empty() || snr_grid_db.empty()) {
        throw std::invalid_argument("capacity_comparison: empty input");
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(entries.size() * snr_grid_db.size());
    for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
        const ChannelParams ch = ChannelParams::from_snr_db(snr_grid_db[si], 1.0);
        McConfig cell_mc = mc;
        cell_mc.stream = substream(mc.stream, si);
        for (const auto& e : entries) {
            const Constellation c = build_apsk(e.n_rings, e.phases_per_ring, e.ring_ratio);
            const CapacityEstimate est = coherent_capacity(c, ch, cell_mc);
            rows.push_back({e, snr_grid_db[si], est.mean_bits, est.std_error});
        }
    }
    return rows;
}

}  // namespace apsk
