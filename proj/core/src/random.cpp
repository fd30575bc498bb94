#include "apsk/random.hpp"

#include <cmath>
#include <numbers>

namespace apsk {
namespace {

// 64-bit finalizer (Stafford mix13). Full avalanche; used as the per-counter
// hash of the generator.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

StreamSpec substream(StreamSpec parent, std::uint64_t tag) {
    return StreamSpec{parent.seed, mix64(parent.stream_id + kGolden * (tag + 1))};
}

CounterRng::CounterRng(StreamSpec spec, std::uint64_t substream_index) {
    std::uint64_t k = mix64(spec.seed + kGolden);
    k = mix64(k ^ spec.stream_id);
    key_ = mix64(k + kGolden * substream_index);
}

std::uint64_t CounterRng::next_u64() {
    std::uint64_t v = mix64(key_ + kGolden * ++counter_);
    return mix64(v ^ key_);
}

double CounterRng::next_unit() {
    // 53-bit mantissa, shifted into (0, 1].
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::next_angle() {
    return 2.0 * std::numbers::pi * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::complex<double> CounterRng::next_complex_gaussian(double variance_per_component) {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double mag = std::sqrt(-2.0 * variance_per_component * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

}  // namespace apsk
