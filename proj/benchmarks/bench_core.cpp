#include <benchmark/benchmark.h>

#include <random>

#include "ffcz/archive.hpp"
#include "ffcz/baseline.hpp"
#include "ffcz/pipeline.hpp"
#include "ffcz/projection.hpp"
#include "ffcz/synth.hpp"
#include "ffcz/transform.hpp"

using namespace ffcz;

namespace {

ScalarField noise(const Dims& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(total_samples(dims));
    for (double& x : v) x = dist(rng);
    return ScalarField::create(dims, std::move(v));
}

void BM_forward_dft_1d(benchmark::State& state) {
    ScalarField f = noise({static_cast<std::size_t>(state.range(0))}, 1);
    for (auto _ : state) benchmark::DoNotOptimize(forward_dft(f));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_forward_dft_1d)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18)->Arg(1000000);

void BM_forward_dft_3d(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    ScalarField f = noise({n, n, n}, 2);
    for (auto _ : state) benchmark::DoNotOptimize(forward_dft(f));
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_forward_dft_3d)->Arg(16)->Arg(32)->Arg(64);

void BM_alternating_projection(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    ScalarField eps0 = noise({n, n, n}, 3);
    for (double& v : eps0.values) v *= 0.001;
    // ~30% of the typical error-spectrum magnitude; several passes per run
    ComplexSpectrum d = forward_dft(eps0);
    double typical = 0.0;
    for (const auto& v : d.values) typical += std::abs(v);
    typical /= double(d.size());
    DualBounds bounds = DualBounds::global(0.0011, 0.3 * typical);
    for (auto _ : state)
        benchmark::DoNotOptimize(alternating_projection(eps0, bounds, 1000));
}
BENCHMARK(BM_alternating_projection)->Arg(16)->Arg(32);

void BM_correct_pipeline(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    ScalarField orig = noise({n, n, n}, 4);
    double lo = orig.values[0], hi = orig.values[0];
    for (double v : orig.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double E = 0.001 * (hi - lo);
    double peak = 0.0;
    ComplexSpectrum X = forward_dft(orig);
    for (const auto& v : X.values) peak = std::max(peak, std::abs(v));
    CompressResult base = uniform_quantize_compress(orig, E);
    DualBounds bounds = DualBounds::global(E, 1e-4 * peak);
    for (auto _ : state)
        benchmark::DoNotOptimize(correct(orig, base.decompressed, bounds));
}
BENCHMARK(BM_correct_pipeline)->Arg(16)->Arg(32);

void BM_archive_roundtrip(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    ScalarField orig = noise({n, n, n}, 5);
    double E = 0.001;
    CompressResult base = uniform_quantize_compress(orig, E);
    CorrectionResult r = correct(orig, base.decompressed, DualBounds::global(E, 0.05));
    for (auto _ : state) {
        DecodedArchive d = read_archive(r.archive_bytes);
        benchmark::DoNotOptimize(apply_edits(base.decompressed, d));
    }
}
BENCHMARK(BM_archive_roundtrip)->Arg(16)->Arg(32);

} // namespace

BENCHMARK_MAIN();
