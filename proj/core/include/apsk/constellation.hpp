#ifndef APSK_CONSTELLATION_HPP
#define APSK_CONSTELLATION_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace apsk {

// M-APSK(N, P): N concentric rings of P phases each, ring amplitudes in
// geometric progression a_k = A * r^k, normalized so the mean symbol energy
// equals avg_energy. Immutable after construction.
struct Constellation {
    int n_rings = 0;
    int phases_per_ring = 0;
    double ring_ratio = 1.0;
    double base_amplitude = 0.0;
    std::vector<double> ring_phase_offsets;
    std::vector<std::complex<double>> points;
    double avg_energy = 1.0;

    int size() const { return n_rings * phases_per_ring; }
    double ring_amplitude(int ring) const;
    std::vector<double> ring_amplitudes() const;
};

// Build a normalized M-APSK(N, P) constellation.
// base_amplitude = sqrt(avg_energy * N / sum_k r^(2k)).
// ring_ratio == 1 collapses rings onto each other and is rejected unless
// allow_unit_ratio is set.
Constellation build_apsk(int n_rings, int phases_per_ring, double ring_ratio,
                         double avg_energy = 1.0,
                         const std::vector<double>& ring_phase_offsets = {},
                         bool allow_unit_ratio = false);

// Single-ring view of ring `ring_index` as its own constellation
// (N = 1, avg_energy = amplitude^2).
Constellation ring_subconstellation(const Constellation& c, int ring_index);

}  // namespace apsk

#endif
