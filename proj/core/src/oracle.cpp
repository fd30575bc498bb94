#include "apsk/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "apsk/numerics.hpp"

namespace apsk {
namespace {

constexpr double kLn2 = std::numbers::ln2;

// M^L with saturation, for the budget check.
std::uint64_t saturating_pow(std::uint64_t m, int l) {
    std::uint64_t v = 1;
    for (int i = 0; i < l; ++i) {
        if (v > UINT64_MAX / m) return UINT64_MAX;
        v *= m;
    }
    return v;
}

}  // namespace

double log_likelihood_block(std::span<const std::complex<double>> r,
                            std::span<const std::complex<double>> s, double sigma_sq) {
    if (r.size() != s.size() || r.empty()) {
        throw std::invalid_argument("log_likelihood_block: r and s must have equal length >= 1");
    }
    if (!(sigma_sq > 0.0)) {
        throw std::invalid_argument("log_likelihood_block: sigma_sq must be > 0");
    }
    const std::size_t len = r.size();
    double energy = 0.0;
    std::complex<double> cross = 0.0;
    for (std::size_t l = 0; l < len; ++l) {
        energy += std::norm(r[l]) + std::norm(s[l]);
        cross += r[l] * std::conj(s[l]);
    }
    return -static_cast<double>(len) * std::log(2.0 * std::numbers::pi * sigma_sq) -
           energy / (2.0 * sigma_sq) + log_bessel_i0(std::abs(cross) / sigma_sq);
}

CapacityEstimate exact_block_ami(const Constellation& c, int block_len,
                                 const ChannelParams& ch, const McConfig& mc,
                                 std::uint64_t budget) {
    if (block_len < 2) throw std::invalid_argument("exact_block_ami: block_len must be >= 2");
    const std::uint64_t m = static_cast<std::uint64_t>(c.size());
    const std::uint64_t total = saturating_pow(m, block_len);
    if (total > budget) {
        throw std::invalid_argument("exact_block_ami: enumeration size M^L = " +
                                    (total == UINT64_MAX ? std::string("overflow")
                                                         : std::to_string(total)) +
                                    " exceeds budget " + std::to_string(budget));
    }

    const std::vector<std::complex<double>> pts = c.points;
    const double sigma_sq = ch.sigma_sq;
    const int len = block_len;

    CapacityEstimate est = run_mc(mc, [pts, sigma_sq, len](CounterRng& rng) {
        const std::size_t m = pts.size();
        thread_local std::vector<std::complex<double>> s, r;
        thread_local std::vector<double> lls;
        s.resize(len);
        r.resize(len);

        for (int l = 0; l < len; ++l) s[l] = pts[rng.next_u64() % m];
        const double theta = rng.next_angle();
        const std::complex<double> rot = std::polar(1.0, theta);
        for (int l = 0; l < len; ++l) r[l] = s[l] * rot + rng.next_complex_gaussian(sigma_sq);

        const double ll_true = log_likelihood_block(r, s, sigma_sq);

        // ln P(R | s0): marginal over every candidate block sharing the
        // reference symbol s0, uniform over the M^(L-1) tails.
        double r_energy = 0.0;
        for (int l = 0; l < len; ++l) r_energy += std::norm(r[l]);
        const double log_norm =
            -static_cast<double>(len) * std::log(2.0 * std::numbers::pi * sigma_sq);

        lls.clear();
        // Depth-first over tail positions, carrying partial cross-correlation
        // and symbol energy.
        auto enumerate = [&](auto&& self, int pos, std::complex<double> cross,
                             double s_energy) -> void {
            if (pos == len) {
                lls.push_back(log_norm - (r_energy + s_energy) / (2.0 * sigma_sq) +
                              log_bessel_i0(std::abs(cross) / sigma_sq));
                return;
            }
            for (std::size_t j = 0; j < m; ++j) {
                self(self, pos + 1, cross + r[pos] * std::conj(pts[j]),
                     s_energy + std::norm(pts[j]));
            }
        };
        enumerate(enumerate, 1, r[0] * std::conj(s[0]), std::norm(s[0]));

        const double ll_marginal =
            log_sum_exp(lls) - static_cast<double>(len - 1) * std::log(static_cast<double>(m));
        return (ll_true - ll_marginal) / kLn2;
    });

    // Per-symbol normalization under the one-symbol-overlap convention.
    const double overlap = static_cast<double>(block_len - 1);
    est.mean_bits /= overlap;
    est.std_error /= overlap;
    return est;
}

}  // namespace apsk
