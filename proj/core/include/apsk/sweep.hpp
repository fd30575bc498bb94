#ifndef APSK_SWEEP_HPP
#define APSK_SWEEP_HPP

#include <vector>

#include "apsk/estimators.hpp"

namespace apsk {

struct SweepSpec {
    int n_rings = 2;
    int phases_per_ring = 4;
    std::vector<double> r_grid;       // distinct, sorted ascending
    std::vector<double> snr_grid_db;
    McConfig mc;
};

struct SweepRow {
    double snr_db = 0.0;
    double ring_ratio = 0.0;
    double capacity_bits = 0.0;
    double capacity_se = 0.0;
    bool is_argmax = false;  // within 2*se of the per-SNR grid maximum
};

// Coherent capacity over the (SNR, r) grid. Common random numbers are shared
// across r at fixed SNR so the argmax is resolved against correlated noise.
// Rows are SNR-major, r ascending. Grid maxima tied within 2*se are all
// flagged, so a flat optimum reports an interval.
std::vector<SweepRow> ring_ratio_sweep(const SweepSpec& spec);

struct ComparisonEntry {
    int n_rings;
    int phases_per_ring;
    double ring_ratio;
};

struct ComparisonRow {
    ComparisonEntry constellation;
    double snr_db = 0.0;
    double capacity_bits = 0.0;
    double capacity_se = 0.0;
};

// Coherent capacities per constellation per SNR.
std::vector<ComparisonRow> capacity_comparison(const std::vector<ComparisonEntry>& entries,
                                               const std::vector<double>& snr_grid_db,
                                               const McConfig& mc);

}  // namespace apsk

#endif
