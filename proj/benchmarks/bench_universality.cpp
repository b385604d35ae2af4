#include <benchmark/benchmark.h>

#include "unimap/codes.hpp"
#include "unimap/map_spec.hpp"
#include "unimap/universality.hpp"

using namespace unimap;

static void BM_Certify(benchmark::State& state) {
  IntervalMap f = parse_map_spec("builtin scaled-sin r=0.5 domain=[-0.31830988618,0.31830988618]");
  for (auto _ : state) benchmark::DoNotOptimize(certify_universal(f, 0.0));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

static void BM_FindPoint(benchmark::State& state) {
  IntervalMap f = parse_map_spec("builtin scaled-sin r=0.5 domain=[-0.31830988618,0.31830988618]");
  LRCode c = parse_code("(RRLL)*");
  for (auto _ : state) benchmark::DoNotOptimize(find_point_with_pattern(f, 0.0, c, state.range(0), 1e-12));
}
BENCHMARK(BM_FindPoint)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_FindPointCubic(benchmark::State& state) {
  IntervalMap f = parse_map_spec("builtin cubic-fifth-sin domain=[-0.31830988618,0.31830988618]");
  LRCode c = parse_code("(RRLL)*");
  for (auto _ : state) benchmark::DoNotOptimize(find_point_with_pattern(f, 0.0, c, state.range(0), 1e-12));
}
BENCHMARK(BM_FindPointCubic)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
