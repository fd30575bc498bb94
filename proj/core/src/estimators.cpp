#include "apsk/estimators.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "apsk/numerics.hpp"

namespace apsk {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_channel(const ChannelParams& ch) {
    if (!(ch.sigma_sq > 0.0) || !std::isfinite(ch.sigma_sq)) {
        throw std::invalid_argument("ChannelParams: sigma_sq must be finite and > 0");
    }
}

// Noise variance scaled by 1/factor; models the matched-filter SNR gain of
// observing a known input through `factor` coordinates.
ChannelParams boost_snr(const ChannelParams& ch, double factor) {
    ChannelParams out = ch;
    out.snr_db = ch.snr_db + 10.0 * std::log10(factor);
    out.n0 = ch.n0 / factor;
    out.sigma_sq = ch.sigma_sq / factor;
    return out;
}

// Uniform-average of N per-ring estimates; std errors combine in quadrature.
CapacityEstimate average_rings(const std::vector<CapacityEstimate>& per_ring) {
    CapacityEstimate out;
    double var = 0.0;
    for (const auto& e : per_ring) {
        out.mean_bits += e.mean_bits;
        var += e.std_error * e.std_error;
        out.samples_used += e.samples_used;
    }
    const double n = static_cast<double>(per_ring.size());
    out.mean_bits /= n;
    out.std_error = std::sqrt(var) / n;
    return out;
}

// One draw of the coherent-AWGN AMI integrand for a uniform input over
// `points`:  log2 M - log2 sum_j exp((|n|^2 - |s_k + n - s_j|^2)/(2 sigma^2)).
double coherent_sample(CounterRng& rng, std::span<const std::complex<double>> points,
                       double sigma_sq, std::vector<double>& scratch) {
    const std::size_t m = points.size();
    const std::size_t k = static_cast<std::size_t>(rng.next_u64() % m);
    const std::complex<double> n = rng.next_complex_gaussian(sigma_sq);
    const std::complex<double> r = points[k] + n;
    const double n2 = std::norm(n);
    scratch.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        scratch[j] = (n2 - std::norm(r - points[j])) / (2.0 * sigma_sq);
    }
    return std::log2(static_cast<double>(m)) - log_sum_exp(scratch) / kLn2;
}

// One draw of the continuous-phase AMI integrand at amplitude a:
//   log2 p(r|theta) - log2 p(r)
// with p(r) = exp(-(|r|^2 + a^2)/(2 sigma^2)) I0(a|r|/sigma^2) / (2 pi sigma^2).
double phase_cont_sample(CounterRng& rng, double a, double sigma_sq) {
    const double theta = rng.next_angle();
    const std::complex<double> n = rng.next_complex_gaussian(sigma_sq);
    const std::complex<double> r = std::polar(a, theta) + n;
    const double r2 = std::norm(r);
    return (r2 + a * a - std::norm(n)) / (2.0 * sigma_sq * kLn2) -
           log_bessel_i0(a * std::sqrt(r2) / sigma_sq) / kLn2;
}

std::vector<std::complex<double>> psk_points(double amplitude, int phases) {
    std::vector<std::complex<double>> pts(phases);
    for (int p = 0; p < phases; ++p) {
        pts[p] = std::polar(amplitude, 2.0 * std::numbers::pi * p / phases);
    }
    return pts;
}

// Draw L i.i.d. ring indices and return the matched-filter block amplitude
// ||A|| = sqrt(sum_l a_l^2).
double draw_block_amplitude(CounterRng& rng, std::span<const double> ring_amps, int block_len) {
    double e = 0.0;
    for (int l = 0; l < block_len; ++l) {
        const std::size_t k = static_cast<std::size_t>(rng.next_u64() % ring_amps.size());
        e += ring_amps[k] * ring_amps[k];
    }
    return std::sqrt(e);
}

}  // namespace

ChannelParams ChannelParams::from_snr_db(double snr_db, double avg_energy) {
    if (!(avg_energy > 0.0) || !std::isfinite(avg_energy) || !std::isfinite(snr_db)) {
        throw std::invalid_argument("ChannelParams::from_snr_db: invalid parameters");
    }
    ChannelParams ch;
    ch.snr_db = snr_db;
    ch.n0 = avg_energy / std::pow(10.0, snr_db / 10.0);
    ch.sigma_sq = ch.n0 / 2.0;
    return ch;
}

CapacityEstimate run_mc(const McConfig& mc,
                        const std::function<double(CounterRng&)>& sample_fn) {
    if (mc.samples == 0) throw std::invalid_argument("run_mc: samples must be >= 1");
    if (mc.chunk_size == 0) throw std::invalid_argument("run_mc: chunk_size must be >= 1");

    const std::uint64_t n_chunks = (mc.samples + mc.chunk_size - 1) / mc.chunk_size;
    std::vector<double> sums(n_chunks, 0.0);
    std::vector<double> sumsqs(n_chunks, 0.0);

    unsigned n_threads = mc.threads != 0 ? mc.threads : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(n_threads, n_chunks));

    std::atomic<std::uint64_t> next_chunk{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        try {
            for (;;) {
                const std::uint64_t chunk = next_chunk.fetch_add(1);
                if (chunk >= n_chunks || failed.load(std::memory_order_relaxed)) break;
                const std::uint64_t begin = chunk * mc.chunk_size;
                const std::uint64_t end = std::min(begin + mc.chunk_size, mc.samples);
                double s = 0.0, s2 = 0.0;
                for (std::uint64_t i = begin; i < end; ++i) {
                    CounterRng rng(mc.stream, i);
                    const double v = sample_fn(rng);
                    s += v;
                    s2 += v * v;
                }
                sums[chunk] = s;
                sumsqs[chunk] = s2;
            }
        } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    // Chunk-index-ordered reduction: independent of scheduling.
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        sum += sums[c];
        sumsq += sumsqs[c];
    }
    const double n = static_cast<double>(mc.samples);
    CapacityEstimate est;
    est.samples_used = mc.samples;
    est.mean_bits = sum / n;
    const double var = std::max(0.0, (sumsq - n * est.mean_bits * est.mean_bits) /
                                         std::max(1.0, n - 1.0));
    est.std_error = std::sqrt(var / n);
    return est;
}

CapacityEstimate coherent_capacity_points(std::span<const std::complex<double>> points,
                                          const ChannelParams& ch, const McConfig& mc) {
    if (points.empty()) throw std::invalid_argument("coherent_capacity: empty point set");
    check_channel(ch);
    const std::vector<std::complex<double>> pts(points.begin(), points.end());
    const double sigma_sq = ch.sigma_sq;
    return run_mc(mc, [pts, sigma_sq](CounterRng& rng) {
        thread_local std::vector<double> scratch;
        return coherent_sample(rng, pts, sigma_sq, scratch);
    });
}

CapacityEstimate coherent_capacity(const Constellation& c, const ChannelParams& ch,
                                   const McConfig& mc) {
    return coherent_capacity_points(c.points, ch, mc);
}

CapacityEstimate psk_phase_info_discrete(double amplitude, int phases,
                                         const ChannelParams& ch, const McConfig& mc) {
    if (phases < 2) throw std::invalid_argument("psk_phase_info_discrete: phases must be >= 2");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("psk_phase_info_discrete: amplitude must be finite and >= 0");
    }
    return coherent_capacity_points(psk_points(amplitude, phases), ch, mc);
}

CapacityEstimate phase_info_continuous(double amplitude, const ChannelParams& ch,
                                       const McConfig& mc) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("phase_info_continuous: amplitude must be finite and >= 0");
    }
    check_channel(ch);
    const double sigma_sq = ch.sigma_sq;
    return run_mc(mc, [amplitude, sigma_sq](CounterRng& rng) {
        return phase_cont_sample(rng, amplitude, sigma_sq);
    });
}

CapacityEstimate phase_info_r0(const Constellation& c, const ChannelParams& ch,
                               ThetaModel theta_model, const McConfig& mc) {
    std::vector<CapacityEstimate> per_ring;
    per_ring.reserve(c.n_rings);
    for (int k = 0; k < c.n_rings; ++k) {
        McConfig ring_mc = mc;
        ring_mc.stream = substream(mc.stream, static_cast<std::uint64_t>(k));
        const double a = c.ring_amplitude(k);
        per_ring.push_back(theta_model == ThetaModel::discrete
                               ? psk_phase_info_discrete(a, c.phases_per_ring, ch, ring_mc)
                               : phase_info_continuous(a, ch, ring_mc));
    }
    return average_rings(per_ring);
}

CapacityEstimate phase_info_given_s(const Constellation& c, int block_len,
                                    const ChannelParams& ch, ThetaModel theta_model,
                                    const McConfig& mc, AmplitudeMode mode) {
    if (block_len < 1) throw std::invalid_argument("phase_info_given_s: block_len must be >= 1");
    check_channel(ch);

    if (mode == AmplitudeMode::literal) {
        const ChannelParams boosted = boost_snr(ch, static_cast<double>(block_len));
        return phase_info_r0(c, boosted, theta_model, mc);
    }

    // exact_block: draw the amplitude vector jointly with the channel sample,
    // so the estimate averages over ||A|| rather than per-symbol amplitudes.
    const std::vector<double> amps = c.ring_amplitudes();
    const double sigma_sq = ch.sigma_sq;
    const int phases = c.phases_per_ring;
    if (theta_model == ThetaModel::continuous) {
        return run_mc(mc, [amps, block_len, sigma_sq](CounterRng& rng) {
            const double a = draw_block_amplitude(rng, amps, block_len);
            return phase_cont_sample(rng, a, sigma_sq);
        });
    }
    return run_mc(mc, [amps, block_len, sigma_sq, phases](CounterRng& rng) {
        thread_local std::vector<double> scratch;
        const double a = draw_block_amplitude(rng, amps, block_len);
        const std::vector<std::complex<double>> pts = psk_points(a, phases);
        return coherent_sample(rng, pts, sigma_sq, scratch);
    });
}

}  // namespace apsk
