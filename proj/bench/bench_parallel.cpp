#include <benchmark/benchmark.h>

#include "tcbe/spectra.hpp"

namespace {

tcbe::spectrum_request truncated_cue(std::size_t n)
{
    tcbe::spectrum_request req;
    req.spec.kind = tcbe::ensemble_kind::circular;
    req.spec.n = n;
    req.spec.beta = 2.0;
    req.mode = tcbe::spectrum_mode::truncated;
    req.scale = tcbe::scaling::edge;
    return req;
}

tcbe::sde_config sine_config()
{
    tcbe::sde_config cfg;
    cfg.beta = 2.0;
    cfg.u_min = tcbe::default_u_min(2.0, 5.0);
    cfg.step = 1e-2;
    for (int k = -5; k <= 5; ++k)
        cfg.z_grid.push_back(double(k));
    return cfg;
}

void spectra_parallel(benchmark::State& state)
{
    auto req = truncated_cue(std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(tcbe::sample_spectra(req, 64, 1));
}

void spectra_serial(benchmark::State& state)
{
    auto req = truncated_cue(std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(tcbe::sample_spectra_serial(req, 64, 1));
}

void paths_parallel(benchmark::State& state)
{
    auto cfg = sine_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(tcbe::simulate_paths(cfg, std::size_t(state.range(0)), 1));
}

void paths_serial(benchmark::State& state)
{
    auto cfg = sine_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(tcbe::simulate_paths_serial(cfg, std::size_t(state.range(0)), 1));
}

} // namespace

BENCHMARK(spectra_parallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(spectra_serial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(paths_parallel)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(paths_serial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
