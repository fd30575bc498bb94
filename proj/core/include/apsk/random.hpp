#ifndef APSK_RANDOM_HPP
#define APSK_RANDOM_HPP

#include <complex>
#include <cstdint>

namespace apsk {

// Identifies one logical random stream. Distinct (seed, stream_id) pairs
// give independent streams; the same pair always replays the same sequence,
// on any platform and with any worker layout.
struct StreamSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Derive a child stream. Tags only need to be unique among siblings.
StreamSpec substream(StreamSpec parent, std::uint64_t tag);

// Counter-based generator: each output is a hash of (key, counter), so a
// generator can be constructed cheaply at any point of the stream and the
// sequence never depends on how work was chunked across threads.
class CounterRng {
  public:
    explicit CounterRng(StreamSpec spec, std::uint64_t substream_index = 0);

    std::uint64_t next_u64();

    // Uniform on (0, 1].
    double next_unit();

    // Uniform on [0, 2*pi).
    double next_angle();

    // One pair of independent N(0, variance) reals via Box-Muller.
    std::complex<double> next_complex_gaussian(double variance_per_component);

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace apsk

#endif
