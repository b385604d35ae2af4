#include <benchmark/benchmark.h>

#include "unimap/codes.hpp"

using namespace unimap;

static void BM_ParseCode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_code("RRLRL(RRLL)*"));
}
BENCHMARK(BM_ParseCode);

static void BM_CanonicalRepresentative(benchmark::State& state) {
  LRCode c = parse_code("RL(RRL)*");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_representative(c, state.range(0)));
}
BENCHMARK(BM_CanonicalRepresentative)->Arg(10)->Arg(40)->Arg(160);

static void BM_EncodeRepresentative(benchmark::State& state) {
  auto rep = canonical_representative(parse_code("(RRLL)*"), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(encode_orbit(std::span<const Rational>(rep)));
}
BENCHMARK(BM_EncodeRepresentative)->Arg(40)->Arg(160);

static void BM_CmpFromCode(benchmark::State& state) {
  LRCode c = parse_code("LR(RRLRL)*");
  for (auto _ : state) benchmark::DoNotOptimize(cmp_from_code(c, 7, 31));
}
BENCHMARK(BM_CmpFromCode);
