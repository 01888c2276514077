#include <benchmark/benchmark.h>

#include <random>

#include "ringroots/localization.hpp"
#include "ringroots/matcher.hpp"
#include "ringroots/roots.hpp"
#include "ringroots/sampler.hpp"
#include "ringroots/xnum.hpp"

using namespace ringroots;

namespace {

CoefficientVector draw(TailVariant v, std::size_t n, std::uint64_t seed) {
  CoefficientDistribution d;
  d.variant = v;
  return sample_coefficients(d, n, seed);
}

void BM_xadd(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lm(-50, 50), ph(-3, 3);
  std::vector<XComplex> xs(1024);
  for (auto& x : xs) x = XComplex::polar(lm(rng), ph(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xadd(xs[i & 1023], xs[(i + 7) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_xadd);

void BM_aberth_gaussian(benchmark::State& state) {
  const auto c = draw(TailVariant::ComplexGaussian, static_cast<std::size_t>(state.range(0)), 11);
  const Polynomial p(c.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(aberth_solve(p));
}
BENCHMARK(BM_aberth_gaussian)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_aberth_slow_tail(benchmark::State& state) {
  const auto c = draw(TailVariant::SlowTailMagnitude, static_cast<std::size_t>(state.range(0)), 12);
  const Polynomial p(c.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(aberth_solve(p));
}
BENCHMARK(BM_aberth_slow_tail)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_pellet_certify(benchmark::State& state) {
  const auto c = draw(TailVariant::SlowTailMagnitude, static_cast<std::size_t>(state.range(0)), 13);
  const Polynomial p(c.coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(pellet_certify(p, c.tau));
}
BENCHMARK(BM_pellet_certify)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_match_roots(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = draw(TailVariant::DoubleLogSlowTail, n, 14);
  const auto rs = aberth_solve(Polynomial(c.coeffs));
  const auto pr = predicted_roots(c);
  for (auto _ : state) benchmark::DoNotOptimize(match_roots(rs, pr, 0.5, n));
}
BENCHMARK(BM_match_roots)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
