#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "apsk/constellation.hpp"
#include "apsk/estimators.hpp"
#include "support/reference.hpp"

using namespace apsk;

namespace {

McConfig mc(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream = 0) {
    McConfig m;
    m.samples = samples;
    m.stream = {seed, stream};
    return m;
}

}  // namespace

TEST_CASE("channel parameters follow E_s/N0") {
    const ChannelParams ch = ChannelParams::from_snr_db(3.0, 1.0);
    CHECK(ch.n0 == doctest::Approx(std::pow(10.0, -0.3)));
    CHECK(ch.sigma_sq == doctest::Approx(ch.n0 / 2.0));
    const ChannelParams ch2 = ChannelParams::from_snr_db(0.0, 2.0);
    CHECK(ch2.n0 == doctest::Approx(2.0));
}

TEST_CASE("coherent capacity saturates at log2 M") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const auto est = coherent_capacity(c, ChannelParams::from_snr_db(30.0), mc(20000, 1));
    CHECK(std::fabs(est.mean_bits - 3.0) < 0.02);
}

TEST_CASE("coherent capacity vanishes at -30 dB") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const auto est = coherent_capacity(c, ChannelParams::from_snr_db(-30.0), mc(20000, 2));
    CHECK(std::fabs(est.mean_bits) < 0.02);
}

TEST_CASE("QPSK at 5 dB matches Gauss-Hermite quadrature") {
    const Constellation c = build_apsk(1, 4, 1.0);
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    const auto est = coherent_capacity(c, ch, mc(200000, 3));
    const double ref = testing::coherent_capacity_quadrature(c.points, ch.sigma_sq, 48);
    CHECK(std::fabs(est.mean_bits - ref) < 3.0 * est.std_error);
}

TEST_CASE("discrete phase information") {
    const ChannelParams ch0 = ChannelParams::from_snr_db(0.0);

    SUBCASE("zero amplitude carries nothing") {
        const auto est = psk_phase_info_discrete(0.0, 4, ch0, mc(5000, 4));
        CHECK(est.mean_bits == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(est.std_error == doctest::Approx(0.0));
    }
    SUBCASE("saturation at log2 P") {
        const auto est =
            psk_phase_info_discrete(1.0, 4, ChannelParams::from_snr_db(30.0), mc(20000, 5));
        CHECK(std::fabs(est.mean_bits - 2.0) < 0.02);
    }
    SUBCASE("matches quadrature at 0 dB") {
        const auto est = psk_phase_info_discrete(1.0, 4, ch0, mc(200000, 6));
        std::vector<std::complex<double>> pts;
        for (int p = 0; p < 4; ++p) pts.push_back(std::polar(1.0, std::numbers::pi / 2.0 * p));
        const double ref = testing::coherent_capacity_quadrature(pts, ch0.sigma_sq, 48);
        CHECK(std::fabs(est.mean_bits - ref) < 3.0 * est.std_error);
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(psk_phase_info_discrete(1.0, 1, ch0, mc(100, 0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(psk_phase_info_discrete(-1.0, 4, ch0, mc(100, 0)),
                        std::invalid_argument);
    }
}

TEST_CASE("continuous phase information") {
    SUBCASE("zero amplitude carries nothing") {
        const auto est =
            phase_info_continuous(0.0, ChannelParams::from_snr_db(0.0), mc(5000, 7));
        CHECK(std::fabs(est.mean_bits) < 1e-9);
    }
    SUBCASE("matches the radial quadrature oracle at 0 dB") {
        const ChannelParams ch = ChannelParams::from_snr_db(0.0);  // sigma^2 = 0.5
        const auto est = phase_info_continuous(1.0, ch, mc(200000, 8));
        const double ref = testing::phase_info_continuous_quadrature(1.0, ch.sigma_sq);
        CHECK(ref == doctest::Approx(0.9809).epsilon(2e-3));  // frozen cross-check
        CHECK(std::fabs(est.mean_bits - ref) < 3.0 * est.std_error);
    }
    SUBCASE("strictly increasing in amplitude") {
        const ChannelParams ch = ChannelParams::from_snr_db(0.0);
        const auto a = phase_info_continuous(0.5, ch, mc(100000, 9, 0));
        const auto b = phase_info_continuous(1.0, ch, mc(100000, 9, 1));
        const auto c = phase_info_continuous(2.0, ch, mc(100000, 9, 2));
        CHECK(b.mean_bits - a.mean_bits >
              3.0 * std::hypot(a.std_error, b.std_error));
        CHECK(c.mean_bits - b.mean_bits >
              3.0 * std::hypot(b.std_error, c.std_error));
    }
}

TEST_CASE("discrete phase information approaches the continuous limit from below") {
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    const auto cont = phase_info_continuous(1.0, ch, mc(200000, 10));
    double prev = -1.0;
    for (int p : {2, 4, 8, 16, 64}) {
        const auto est = psk_phase_info_discrete(1.0, p, ch, mc(200000, 10, p));
        CHECK(est.mean_bits > prev - 3.0 * est.std_error);
        CHECK(est.mean_bits < cont.mean_bits + 3.0 * std::hypot(est.std_error, cont.std_error));
        prev = est.mean_bits;
    }
    // P = 64 resolves the continuous value at this SNR.
    const auto fine = psk_phase_info_discrete(1.0, 64, ch, mc(200000, 10, 64));
    CHECK(std::fabs(fine.mean_bits - cont.mean_bits) <
          0.01 + 3.0 * std::hypot(fine.std_error, cont.std_error));
}

TEST_CASE("phase_info_r0 composition") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(30.0);

    SUBCASE("both rings saturate at high SNR") {
        const auto est = phase_info_r0(c, ch, ThetaModel::discrete, mc(20000, 11));
        CHECK(std::fabs(est.mean_bits - 2.0) < 0.02);
    }
    SUBCASE("single ring reduces to the PSK term") {
        const Constellation psk = build_apsk(1, 4, 1.0);
        const McConfig base = mc(20000, 12);
        const auto via_r0 =
            phase_info_r0(psk, ChannelParams::from_snr_db(5.0), ThetaModel::discrete, base);
        McConfig ring0 = base;
        ring0.stream = substream(base.stream, 0);
        const auto direct =
            psk_phase_info_discrete(1.0, 4, ChannelParams::from_snr_db(5.0), ring0);
        CHECK(via_r0.mean_bits == direct.mean_bits);  // same stream, same samples
    }
    SUBCASE("continuous average matches per-ring quadrature") {
        const ChannelParams ch0 = ChannelParams::from_snr_db(0.0);
        const auto est = phase_info_r0(c, ch0, ThetaModel::continuous, mc(200000, 13));
        const double ref =
            0.5 * testing::phase_info_continuous_quadrature(c.ring_amplitude(0), ch0.sigma_sq) +
            0.5 * testing::phase_info_continuous_quadrature(c.ring_amplitude(1), ch0.sigma_sq);
        CHECK(std::fabs(est.mean_bits - ref) < 3.0 * est.std_error);
    }
}

TEST_CASE("phase_info_given_s") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(0.0);

    SUBCASE("block length 1 reduces to the r0 term") {
        const McConfig base = mc(50000, 14);
        const auto gs = phase_info_given_s(c, 1, ch, ThetaModel::continuous, base);
        const auto r0 = phase_info_r0(c, ch, ThetaModel::continuous, base);
        CHECK(gs.mean_bits == r0.mean_bits);
    }
    SUBCASE("zero-amplitude constellation carries nothing") {
        Constellation zero = c;
        zero.base_amplitude = 0.0;
        for (auto& p : zero.points) p = 0.0;
        const auto gs = phase_info_given_s(zero, 4, ch, ThetaModel::continuous, mc(5000, 15));
        CHECK(std::fabs(gs.mean_bits) < 1e-9);
    }
    SUBCASE("literal mode averages boosted per-ring PSK terms, checked by quadrature") {
        const auto gs = phase_info_given_s(c, 2, ch, ThetaModel::discrete, mc(200000, 16));
        const double root2 = std::sqrt(2.0);
        auto psk_ref = [&](double a) {
            std::vector<std::complex<double>> pts;
            for (int p = 0; p < 4; ++p) {
                pts.push_back(std::polar(a * root2, std::numbers::pi / 2.0 * p));
            }
            return testing::coherent_capacity_quadrature(pts, ch.sigma_sq, 48);
        };
        const double ref =
            0.5 * psk_ref(c.ring_amplitude(0)) + 0.5 * psk_ref(c.ring_amplitude(1));
        CHECK(std::fabs(gs.mean_bits - ref) < 3.0 * gs.std_error);
    }
    SUBCASE("exact-block mode uses matched-filter amplitudes") {
        // For L = 2 and N = 2 rings the block amplitude takes three values
        // with weights 1/4, 1/2, 1/4.
        const auto gs = phase_info_given_s(c, 2, ch, ThetaModel::continuous, mc(400000, 17),
                                           AmplitudeMode::exact_block);
        const double a0 = c.ring_amplitude(0), a1 = c.ring_amplitude(1);
        const double ref =
            0.25 * testing::phase_info_continuous_quadrature(a0 * std::sqrt(2.0), ch.sigma_sq) +
            0.50 * testing::phase_info_continuous_quadrature(std::sqrt(a0 * a0 + a1 * a1),
                                                             ch.sigma_sq) +
            0.25 * testing::phase_info_continuous_quadrature(a1 * std::sqrt(2.0), ch.sigma_sq);
        CHECK(std::fabs(gs.mean_bits - ref) < 4.0 * gs.std_error);
    }
}

TEST_CASE("estimates are invariant to chunking and thread count") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    McConfig base = mc(30000, 18);
    for (std::uint64_t chunk : {100ULL, 999ULL, 30000ULL}) {
        McConfig single = base;
        single.chunk_size = chunk;
        single.threads = 1;
        const auto ref = coherent_capacity(c, ch, single);
        for (unsigned threads : {2u, 8u}) {
            McConfig alt = single;
            alt.threads = threads;
            const auto est = coherent_capacity(c, ch, alt);
            CHECK(est.mean_bits == ref.mean_bits);
            CHECK(est.std_error == ref.std_error);
        }
    }
}

TEST_CASE("std error shrinks like 1/sqrt(samples)") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    double ratio_sum = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const auto small = coherent_capacity(c, ch, mc(10000, 19, rep));
        const auto big = coherent_capacity(c, ch, mc(20000, 20, rep));
        ratio_sum += big.std_error / small.std_error;
    }
    const double mean_ratio = ratio_sum / 10.0;
    CHECK(mean_ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("estimates stay inside the information-theoretic range") {
    const Constellation c = build_apsk(2, 4, 2.42);
    for (double snr : {-20.0, -5.0, 0.0, 10.0, 25.0}) {
        const auto est =
            coherent_capacity(c, ChannelParams::from_snr_db(snr), mc(20000, 21, (int)(snr + 40)));
        CHECK(est.mean_bits > -5.0 * est.std_error - 1e-9);
        CHECK(est.mean_bits < 3.0 + 5.0 * est.std_error + 1e-9);
    }
}

TEST_CASE("estimator input validation") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(0.0);
    CHECK_THROWS_AS(coherent_capacity(c, ch, mc(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(phase_info_given_s(c, 0, ch, ThetaModel::discrete, mc(100, 0)),
                    std::invalid_argument);
    ChannelParams bad = ch;
    bad.sigma_sq = -1.0;
    CHECK_THROWS_AS(coherent_capacity(c, bad, mc(100, 0)), std::invalid_argument);
}
