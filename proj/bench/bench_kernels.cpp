// Serial vs OpenMP throughput of the grid kernels.
// Run: build/qnd_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "qnd/fock.hpp"
#include "qnd/kernels.hpp"
#include "qnd/phase_model.hpp"

namespace {

using qnd::kernels::Exec;

qnd::FockVector dispersed_state(double n_probe) {
    auto s = qnd::coherent_amplitudes(n_probe);
    const auto p = qnd::compensated_phase_profile(0.7 / std::sqrt(n_probe), n_probe, s.n_min,
                                                  s.n_top());
    return qnd::apply_cross_phase(s, p);
}

void bench_husimi(benchmark::State& state, Exec exec) {
    const auto s = dispersed_state(100.0);
    const auto axis = qnd::husimi_auto_axis(s, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto q = qnd::kernels::husimi_grid(s, axis, axis, exec);
        benchmark::DoNotOptimize(q.data());
    }
}

void bench_density(benchmark::State& state, Exec exec) {
    const auto s = dispersed_state(static_cast<double>(state.range(0)));
    const auto axis = qnd::quadrature_auto_axis(s);
    for (auto _ : state) {
        auto d = qnd::kernels::density_values(s, axis, exec);
        benchmark::DoNotOptimize(d.data());
    }
}

void bench_dft(benchmark::State& state, Exec exec) {
    const auto s = dispersed_state(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto f = qnd::kernels::dft_abs(s.amplitudes, exec);
        benchmark::DoNotOptimize(f.data());
    }
}

} // namespace

BENCHMARK_CAPTURE(bench_husimi, serial, Exec::serial)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_husimi, openmp, Exec::parallel)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_density, serial, Exec::serial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_density, openmp, Exec::parallel)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_dft, serial, Exec::serial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_dft, openmp, Exec::parallel)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
