#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "apsk/bounds.hpp"
#include "apsk/constellation.hpp"
#include "apsk/oracle.hpp"
#include "apsk/random.hpp"
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

TEST_CASE("block likelihood matches explicit phase marginalization") {
    CounterRng rng({101, 0});
    for (int rep = 0; rep < 50; ++rep) {
        const int len = 1 + static_cast<int>(rng.next_u64() % 6);
        const double sigma_sq = 0.05 + rng.next_unit();
        std::vector<std::complex<double>> r(len), s(len);
        for (int l = 0; l < len; ++l) {
            r[l] = rng.next_complex_gaussian(1.0);
            s[l] = rng.next_complex_gaussian(1.0);
        }
        const double got = log_likelihood_block(r, s, sigma_sq);
        const double ref = testing::log_likelihood_block_quadrature(r, s, sigma_sq);
        CHECK(got == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("block likelihood is phase invariant") {
    CounterRng rng({102, 0});
    std::vector<std::complex<double>> r(3), s(3), s_rot(3);
    for (int l = 0; l < 3; ++l) {
        r[l] = rng.next_complex_gaussian(1.0);
        s[l] = rng.next_complex_gaussian(1.0);
    }
    const double base = log_likelihood_block(r, s, 0.5);
    for (int k = 0; k < 8; ++k) {
        const std::complex<double> rot = std::polar(1.0, 0.7 * k);
        for (int l = 0; l < 3; ++l) s_rot[l] = s[l] * rot;
        CHECK(log_likelihood_block(r, s_rot, 0.5) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("block likelihood input validation") {
    const std::vector<std::complex<double>> a(2, 1.0), b(3, 1.0), empty;
    CHECK_THROWS_AS(log_likelihood_block(a, b, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(log_likelihood_block(empty, empty, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(log_likelihood_block(a, a, 0.0), std::invalid_argument);
}

TEST_CASE("oracle enumeration budget is enforced") {
    const Constellation c = build_apsk(2, 8, 2.0);  // M = 16
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    // 16^4 = 65536 fits the default budget, 16^5 does not.
    CHECK_NOTHROW(exact_block_ami(c, 4, ch, mc(10, 0)));
    CHECK_THROWS_AS(exact_block_ami(c, 5, ch, mc(10, 0)), std::invalid_argument);
    CHECK_THROWS_AS(exact_block_ami(c, 2, ch, mc(10, 0), 100), std::invalid_argument);
    CHECK_THROWS_AS(exact_block_ami(c, 1, ch, mc(10, 0)), std::invalid_argument);
}

TEST_CASE("oracle is deterministic for a fixed stream") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    const auto a = exact_block_ami(c, 2, ch, mc(2000, 33));
    const auto b = exact_block_ami(c, 2, ch, mc(2000, 33));
    CHECK(a.mean_bits == b.mean_bits);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("oracle saturates at log2 M per symbol at high SNR") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const auto est = exact_block_ami(c, 2, ChannelParams::from_snr_db(35.0), mc(3000, 34));
    CHECK(std::fabs(est.mean_bits - 3.0) < 0.03);
}

TEST_CASE("oracle vanishes at very low SNR") {
    const Constellation c = build_apsk(2, 4, 2.42);
    const auto est = exact_block_ami(c, 2, ChannelParams::from_snr_db(-30.0), mc(3000, 35));
    CHECK(std::fabs(est.mean_bits) < 0.05);
}

TEST_CASE("oracle falls between the bounds") {
    const Constellation c = build_apsk(2, 4, 2.42);
    for (double snr : {0.0, 5.0, 10.0}) {
        const ChannelParams ch = ChannelParams::from_snr_db(snr);
        const McConfig base = mc(60000, 36, static_cast<std::uint64_t>(snr));
        const BoundsRow row =
            compute_bounds_row(c, 2, ch, base, AmplitudeMode::exact_block);
        McConfig omc = base;
        omc.stream = substream(base.stream, 99);
        omc.samples = 20000;
        const auto oracle = exact_block_ami(c, 2, ch, omc);
        const double tol_up = 4.0 * std::hypot(oracle.std_error, row.upper_se);
        const double tol_lo = 4.0 * std::hypot(oracle.std_error, row.lower_se);
        CHECK(oracle.mean_bits <= row.upper_bits + tol_up);
        CHECK(oracle.mean_bits >= row.lower_bits - tol_lo);
    }
}
