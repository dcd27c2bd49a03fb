// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <map>

#include "anonsat/anonymity.hpp"
#include "anonsat/simulator.hpp"

namespace {

using namespace anonsat;

const GatewayGraph& graph(std::size_t n) {
  static std::map<std::size_t, GatewayGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto d = generate_synthetic(LayoutKind::uniform, n, 20000.0, 42);
    it = cache.emplace(n, largest_component(build_graph(d, *find_builtin_profile("lora-subghz")))).first;
  }
  return it->second;
}

void BM_FullReportParallel(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(full_report(g, 3, "bench"));
}

void BM_FullReportReference(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::full_report(g, 3, "bench"));
}

void BM_Node2NodeParallel(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(node2node_paths_avg(g, 3));
}

void BM_Node2NodeReference(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::node2node_paths_avg(g, 3));
}

void BM_UniquePathsParallel(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unique_paths_avg(g, 3));
}

void BM_UniquePathsReference(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::unique_paths_avg(g, 3));
}

SimConfig campaign_config() {
  SimConfig cfg;
  cfg.client_count = 10;
  cfg.runs = 8;
  cfg.sim_duration_s = 600;
  return cfg;
}

void BM_CampaignParallel(benchmark::State& state) {
  const auto& g = graph(150);
  const auto cfg = campaign_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(g, cfg));
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto& g = graph(150);
  const auto cfg = campaign_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign_serial(g, cfg));
}

}  // namespace

BENCHMARK(BM_FullReportParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullReportReference)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Node2NodeParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Node2NodeReference)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniquePathsParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniquePathsReference)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
