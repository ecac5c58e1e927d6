// Serial reference vs OpenMP kernel. The parallel variants take the thread
// count as the benchmark argument; results are identical either way, only
// the wall time moves.

#include <benchmark/benchmark.h>

#include <random>

#include "pixelport/cv_teleport.hpp"
#include "pixelport/fock_oracle.hpp"
#include "pixelport/spdc_squeezing.hpp"

using namespace pixelport;

namespace {

const RingParams kRing{1.0, 0.5, 2.0};

ImageField make_field(int side) {
  const auto geom = GridGeometry::centered(side, side, 3.0 / side);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ImageField f{geom, std::vector<Amplitude>(geom.size()), 1.0};
  for (auto& a : f.amplitudes) a = {u(rng), u(rng)};
  return f;
}

void BM_TeleportImageSerial(benchmark::State& state) {
  const ImageField f = make_field(128);
  const SqueezingProfile prof = profile_for_grid_serial(f.geometry, kRing);
  for (auto _ : state) benchmark::DoNotOptimize(teleport_image_serial(f, prof, {1, 32, OutputPlane::Upright, 0}));
  state.SetItemsProcessed(state.iterations() * f.geometry.size() * 32);
}

void BM_TeleportImageParallel(benchmark::State& state) {
  const ImageField f = make_field(128);
  const SqueezingProfile prof = profile_for_grid_serial(f.geometry, kRing);
  const TeleportOptions opt{1, 32, OutputPlane::Upright, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(teleport_image(f, prof, opt));
  state.SetItemsProcessed(state.iterations() * f.geometry.size() * 32);
}

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_average_fidelity_serial({0.3, 0.1}, 1.0, 1 << 20, 7));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_average_fidelity({0.3, 0.1}, 1.0, 1 << 20, 7, threads));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}

void BM_OracleFidelitySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fock::oracle_average_fidelity_serial({0.3, 0.4}, 0.5, 20, {5.0, 31}));
}

void BM_OracleFidelityParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock::oracle_average_fidelity({0.3, 0.4}, 0.5, 20, {5.0, 31}, threads));
}

void BM_ProfileSerial(benchmark::State& state) {
  const auto geom = GridGeometry::centered(1024, 1024, 3.0 / 1024);
  for (auto _ : state) benchmark::DoNotOptimize(profile_for_grid_serial(geom, kRing));
  state.SetItemsProcessed(state.iterations() * geom.size());
}

void BM_ProfileParallel(benchmark::State& state) {
  const auto geom = GridGeometry::centered(1024, 1024, 3.0 / 1024);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(profile_for_grid(geom, kRing, threads));
  state.SetItemsProcessed(state.iterations() * geom.size());
}

}  // namespace

BENCHMARK(BM_TeleportImageSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TeleportImageParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleFidelitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleFidelityParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
