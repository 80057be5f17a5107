#include <benchmark/benchmark.h>

#include "hproj/hproj.hpp"

namespace {

void BM_HurwitzDirect(benchmark::State& state) {
  const auto n0 = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t n = n0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hproj::hurwitz_direct(n));
    n = n0 + (n - n0 + 1) % 64;
  }
}
BENCHMARK(BM_HurwitzDirect)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_HurwitzFast(benchmark::State& state) {
  const auto n0 = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t n = n0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hproj::hurwitz_fast(n));
    n = n0 + (n - n0 + 1) % 64;
  }
}
BENCHMARK(BM_HurwitzFast)->Arg(1000)->Arg(100000)->Arg(10000000)->Arg(100000000);

void BM_EtaQuotient(benchmark::State& state) {
  const auto spec = hproj::EtaQuotientSpec::parse("8:8,4:-2,16:-2");
  for (auto _ : state) benchmark::DoNotOptimize(hproj::eta_quotient(spec, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EtaQuotient)->Arg(100)->Arg(1000)->Arg(5000);

void BM_RChi(benchmark::State& state) {
  const auto chi = hproj::DirichletCharacter::kronecker(-4);
  hproj::ProjectionConfig cfg;
  cfg.M = state.range(0);
  hproj::HurwitzCache cache;
  hproj::r_chi(1, chi, cfg, cache);  // warm the cache; the timed part is the summation
  for (auto _ : state) benchmark::DoNotOptimize(hproj::r_chi(1, chi, cfg, cache));
}
BENCHMARK(BM_RChi)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
