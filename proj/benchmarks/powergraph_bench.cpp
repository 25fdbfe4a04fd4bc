#include <benchmark/benchmark.h>

#include "powergraph/exact.hpp"
#include "powergraph/graph.hpp"
#include "powergraph/lowerbound.hpp"
#include "powergraph/mds_distributed.hpp"
#include "powergraph/mvc_centralized.hpp"
#include "powergraph/mvc_distributed.hpp"
#include "powergraph/random.hpp"

using namespace powergraph;

namespace {

void BM_Square(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(square(g));
}
BENCHMARK(BM_Square)->RangeMultiplier(2)->Range(64, 1024);

void BM_ExactMvc2(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_mvc2(g));
}
BENCHMARK(BM_ExactMvc2)->DenseRange(12, 24, 4)->Unit(benchmark::kMillisecond);

void BM_ExactMds2(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.15, 3);
  for (auto _ : state) benchmark::DoNotOptimize(exact_mds2(g));
}
BENCHMARK(BM_ExactMds2)->DenseRange(12, 24, 4)->Unit(benchmark::kMillisecond);

void BM_G2mvcEps(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(g2mvc_eps(g, Rational(1, 2)));
}
BENCHMARK(BM_G2mvcEps)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

void BM_G2mwvcEps(benchmark::State& state) {
  const Graph g = with_random_weights(connected_gnp(static_cast<std::size_t>(state.range(0)), 0.3, 5), 16, 5);
  for (auto _ : state) benchmark::DoNotOptimize(g2mwvc_eps(g, Rational(1, 2)));
}
BENCHMARK(BM_G2mwvcEps)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

void BM_G2mvcCcVoting(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.5, 7);
  MvcOptions o;
  o.model.variant = sim::Variant::Clique;
  for (auto _ : state) benchmark::DoNotOptimize(g2mvc_cc_voting(g, Rational(1, 2), o));
}
BENCHMARK(BM_G2mvcCcVoting)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

void BM_G2mvc53(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.05, 9);
  for (auto _ : state) benchmark::DoNotOptimize(g2mvc_53(g));
}
BENCHMARK(BM_G2mvc53)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_G2mdsLogd(benchmark::State& state) {
  const Graph g = connected_gnp(static_cast<std::size_t>(state.range(0)), 0.1, 11);
  MdsOptions o;
  o.estimate.exact_threshold = state.range(1) ? std::nullopt : std::optional<std::size_t>(0);
  for (auto _ : state) benchmark::DoNotOptimize(g2mds_logd(g, o));
}
BENCHMARK(BM_G2mdsLogd)->ArgsProduct({{50, 100, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GenLowerBound(benchmark::State& state) {
  const auto family = static_cast<Family>(state.range(0));
  LowerBoundParams p{4, 2, 8, 2, 1};
  const std::size_t len = input_length(family, p);
  Bits x(len, 0), y(len, 0);
  x[0] = y[0] = 1;
  state.SetLabel(to_string(family));
  for (auto _ : state) benchmark::DoNotOptimize(generate(family, p, x, y));
}
BENCHMARK(BM_GenLowerBound)->DenseRange(0, 6);

void BM_VerifyLowerBound(benchmark::State& state) {
  const auto inst = gen_mvc_square(2, Bits(4, 1), Bits(4, 0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_family(inst));
}
BENCHMARK(BM_VerifyLowerBound)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
