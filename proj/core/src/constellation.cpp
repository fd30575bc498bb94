#include "apsk/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apsk {

double Constellation::ring_amplitude(int ring) const {
    if (ring < 0 || ring >= n_rings) {
        throw std::out_of_range("Constellation::ring_amplitude: ring index out of range");
    }
    return base_amplitude * std::pow(ring_ratio, ring);
}

std::vector<double> Constellation::ring_amplitudes() const {
    std::vector<double> a(n_rings);
    for (int k = 0; k < n_rings; ++k) a[k] = ring_amplitude(k);
    return a;
}

Constellation build_apsk(int n_rings, int phases_per_ring, double ring_ratio,
                         double avg_energy, const std::vector<double>& ring_phase_offsets,
                         bool allow_unit_ratio) {
    if (n_rings < 1) throw std::invalid_argument("build_apsk: n_rings must be >= 1");
    if (phases_per_ring < 2) {
        throw std::invalid_argument("build_apsk: phases_per_ring must be >= 2");
    }
    if (!(ring_ratio > 0.0) || !std::isfinite(ring_ratio)) {
        throw std::invalid_argument("build_apsk: ring_ratio must be finite and > 0");
    }
    if (!(avg_energy > 0.0) || !std::isfinite(avg_energy)) {
        throw std::invalid_argument("build_apsk: avg_energy must be finite and > 0");
    }
    if (n_rings > 1 && ring_ratio == 1.0 && !allow_unit_ratio) {
        throw std::invalid_argument(
            "build_apsk: ring_ratio = 1 collapses rings onto coincident points; "
            "pass allow_unit_ratio to accept the degenerate constellation");
    }
    if (!ring_phase_offsets.empty() &&
        ring_phase_offsets.size() != static_cast<std::size_t>(n_rings)) {
        throw std::invalid_argument("build_apsk: need one phase offset per ring");
    }

    Constellation c;
    c.n_rings = n_rings;
    c.phases_per_ring = phases_per_ring;
    c.ring_ratio = ring_ratio;
    c.avg_energy = avg_energy;
    c.ring_phase_offsets =
        ring_phase_offsets.empty() ? std::vector<double>(n_rings, 0.0) : ring_phase_offsets;

    double energy_sum = 0.0;
    for (int k = 0; k < n_rings; ++k) energy_sum += std::pow(ring_ratio, 2 * k);
    c.base_amplitude = std::sqrt(avg_energy * n_rings / energy_sum);

    c.points.reserve(static_cast<std::size_t>(n_rings) * phases_per_ring);
    for (int k = 0; k < n_rings; ++k) {
        const double a = c.ring_amplitude(k);
        for (int p = 0; p < phases_per_ring; ++p) {
            const double phi =
                2.0 * std::numbers::pi * p / phases_per_ring + c.ring_phase_offsets[k];
            c.points.emplace_back(a * std::cos(phi), a * std::sin(phi));
        }
    }
    return c;
}

Constellation ring_subconstellation(const Constellation& c, int ring_index) {
    if (ring_index < 0 || ring_index >= c.n_rings) {
        throw std::out_of_range("ring_subconstellation: ring index out of range");
    }
    const double a = c.ring_amplitude(ring_index);
    Constellation sub;
    sub.n_rings = 1;
    sub.phases_per_ring = c.phases_per_ring;
    sub.ring_ratio = 1.0;
    sub.base_amplitude = a;
    sub.avg_energy = a * a;
    sub.ring_phase_offsets = {c.ring_phase_offsets[ring_index]};
    sub.points.reserve(c.phases_per_ring);
    for (int p = 0; p < c.phases_per_ring; ++p) {
        sub.points.push_back(c.points[static_cast<std::size_t>(ring_index) * c.phases_per_ring + p]);
    }
    return sub;
}

}  // namespace apsk
