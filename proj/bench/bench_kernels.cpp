#include "rmlab/montecarlo.hpp"

#include <benchmark/benchmark.h>

using namespace rmlab;

namespace {

EnsembleParams params(Family f, int n)
{
    EnsembleParams p;
    p.family = f;
    p.N = n;
    p.alpha = 10.0;
    p.gamma = 0.8;
    p.a = 25.8;
    p.b = 10.0;
    p.validate();
    return p;
}

void BM_SpectraSerial(benchmark::State& st)
{
    auto p = params(Family::GaussianAlpha, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sample_spectra_serial(p, 32, 7));
    st.SetItemsProcessed(st.iterations() * 32);
}

void BM_SpectraParallel(benchmark::State& st)
{
    auto p = params(Family::GaussianAlpha, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sample_spectra(p, 32, 7));
    st.SetItemsProcessed(st.iterations() * 32);
}

void BM_TracesSerial(benchmark::State& st)
{
    auto p = params(Family::JacobiBeta, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(trace_moments_serial(p, 256, 4, 7));
    st.SetItemsProcessed(st.iterations() * 256);
}

void BM_TracesParallel(benchmark::State& st)
{
    auto p = params(Family::JacobiBeta, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(trace_moments(p, 256, 4, 7));
    st.SetItemsProcessed(st.iterations() * 256);
}

void BM_EigRootFree(benchmark::State& st)
{
    auto p = params(Family::LaguerreAlpha, static_cast<int>(st.range(0)));
    Rng rng(3, 0);
    SymTridiag m = build_ensemble(p, rng);
    for (auto _ : st) benchmark::DoNotOptimize(eig_tridiag(m));
}

void BM_EigRotations(benchmark::State& st)
{
    auto p = params(Family::LaguerreAlpha, static_cast<int>(st.range(0)));
    Rng rng(3, 0);
    SymTridiag m = build_ensemble(p, rng);
    for (auto _ : st) benchmark::DoNotOptimize(eig_tridiag_reference(m));
}

} // namespace

BENCHMARK(BM_SpectraSerial)->Arg(125)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectraParallel)->Arg(125)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TracesSerial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TracesParallel)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EigRootFree)->Arg(100)->Arg(500)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EigRotations)->Arg(100)->Arg(500)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
