#include <benchmark/benchmark.h>

#include "pw/analysis.hpp"
#include "pw/corpus.hpp"
#include "pw/text_format.hpp"

namespace {

void BM_WeakProduct(benchmark::State& state) {
  std::vector<pw::Nfioa> factors;
  for (int i = 0; i < state.range(0); ++i) {
    pw::RandomParams p;
    p.states = 5;
    p.name = "F" + std::to_string(i) + "_";
    factors.push_back(pw::random_nfioa(static_cast<std::uint64_t>(i + 1), p));
  }
  for (auto _ : state) benchmark::DoNotOptimize(pw::weak_product(factors));
}
BENCHMARK(BM_WeakProduct)->DenseRange(2, 4);

void BM_RingGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = pw::ring_document(n).network(pw::ring_network_name(n));
  std::size_t configs = 0;
  for (auto _ : state) configs = pw::build_network(spec).graph.config_count();
  state.counters["configurations"] = static_cast<double>(configs);
}
BENCHMARK(BM_RingGraph)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_RingSafety(benchmark::State& state) {
  const auto net = pw::build_network(pw::ring_document(3).network(pw::ring_network_name(3)));
  const auto violation = pw::parse_predicate("count(U*@crit) >= 2", net);
  for (auto _ : state) benchmark::DoNotOptimize(pw::safety_query(net.graph, violation));
}
BENCHMARK(BM_RingSafety);

void BM_TraceEquivalence(benchmark::State& state) {
  const auto doc = pw::ring_comparison_document(3);
  const auto a = pw::build_network(doc.network(pw::ring_network_name(3, pw::RingAdministrator::Deterministic))).graph;
  const auto b =
      pw::build_network(doc.network(pw::ring_network_name(3, pw::RingAdministrator::DeterministicMutant))).graph;
  for (auto _ : state) benchmark::DoNotOptimize(pw::trace_equivalent(a, b));
}
BENCHMARK(BM_TraceEquivalence);

void BM_LawSuite(benchmark::State& state) {
  const auto law = pw::all_laws()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(pw::law_name(law)));
  for (auto _ : state) benchmark::DoNotOptimize(pw::run_law_suite(law, 20));
}
BENCHMARK(BM_LawSuite)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ParseCorpus(benchmark::State& state) {
  const auto text = pw::example_text("ring3");
  for (auto _ : state) benchmark::DoNotOptimize(pw::parse_document(text));
}
BENCHMARK(BM_ParseCorpus);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
