#include <benchmark/benchmark.h>

#include "apsk/bounds.hpp"
#include "apsk/constellation.hpp"
#include "apsk/numerics.hpp"
#include "apsk/oracle.hpp"

namespace {

using namespace apsk;

McConfig mc(std::uint64_t samples) {
    McConfig m;
    m.samples = samples;
    m.stream = {1, 0};
    m.threads = 1;
    return m;
}

void BM_LogBesselI0(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_bessel_i0(x));
    }
}
BENCHMARK(BM_LogBesselI0)->Arg(1)->Arg(15)->Arg(100)->Arg(100000);

void BM_CoherentCapacity(benchmark::State& state) {
    const Constellation c = build_apsk(2, static_cast<int>(state.range(0)), 2.0);
    const ChannelParams ch = ChannelParams::from_snr_db(10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coherent_capacity(c, ch, mc(10000)));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_CoherentCapacity)->Arg(4)->Arg(8);

void BM_PhaseInfoContinuous(benchmark::State& state) {
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_info_continuous(1.0, ch, mc(10000)));
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_PhaseInfoContinuous);

void BM_BoundsRow(benchmark::State& state) {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(10.0);
    const int len = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_bounds_row(c, len, ch, mc(5000)));
    }
}
BENCHMARK(BM_BoundsRow)->Arg(2)->Arg(32);

void BM_ExactBlockAmi(benchmark::State& state) {
    const Constellation c = build_apsk(2, 4, 2.42);
    const ChannelParams ch = ChannelParams::from_snr_db(5.0);
    const int len = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_block_ami(c, len, ch, mc(200)));
    }
}
BENCHMARK(BM_ExactBlockAmi)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
