#include <benchmark/benchmark.h>

#include "unimap/codes.hpp"
#include "unimap/synthesis.hpp"

using namespace unimap;

static void BM_Synthesize(benchmark::State& state) {
  LRCode c = parse_code("(RRLL)*");
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_map(c, state.range(0)));
}
BENCHMARK(BM_Synthesize)->Arg(10)->Arg(40)->Arg(160);

static void BM_VerifyF1(benchmark::State& state) {
  auto res = synthesize_map(parse_code("RL(RRL)*"), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_f1_pwl(res.map));
}
BENCHMARK(BM_VerifyF1)->Arg(40)->Arg(160);
