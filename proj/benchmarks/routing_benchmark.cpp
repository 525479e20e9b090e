#include <benchmark/benchmark.h>

#include "gridqos/consumer_model.hpp"
#include "gridqos/qos_routing.hpp"
#include "gridqos/scenario_bench.hpp"

namespace {

using namespace gridqos;

RoutingInstance instance_of_size(std::size_t nodes) {
  BenchConfig cfg;
  cfg.nodes = nodes;
  cfg.edges = nodes == 160 ? 634 : default_edge_count(nodes);
  cfg.seed = 2024;
  return make_instance(cfg, 0);
}

void BM_GreedyQuery(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto outcome = omcr_greedy(inst.network, inst.source, inst.target, inst.constraints);
    benchmark::DoNotOptimize(outcome);
  }
  state.counters["edges"] = static_cast<double>(inst.network.edge_count());
}
BENCHMARK(BM_GreedyQuery)->DenseRange(80, 160, 20)->Unit(benchmark::kMicrosecond);

void BM_ExactOracle(benchmark::State& state) {
  BenchConfig cfg;
  cfg.nodes = static_cast<std::size_t>(state.range(0));
  cfg.metrics = 3;
  const auto inst = make_instance(cfg, 0);
  for (auto _ : state) {
    auto r = exact_optimal_value(inst.network, inst.source, inst.target, inst.constraints);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExactOracle)->DenseRange(6, 14, 4)->Unit(benchmark::kMicrosecond);

void BM_DelayCost(benchmark::State& state) {
  const auto curve = pjm_bus("D");
  const auto prior = stationary_load_prior(curve);
  const auto util = UtilityModel::logarithmic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(delay_cost(curve, util, static_cast<int>(state.range(0)), 100.0, prior));
  }
}
BENCHMARK(BM_DelayCost)->Arg(1)->Arg(50)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
