#include "benchmark/benchmark.h"

#include "spanloc/document.hpp"
#include "spanloc/localization.hpp"
#include "spanloc/span.hpp"

using namespace spanloc;

namespace {

CategoryDocument cube() {
  static CategoryDocument doc =
      load_document(std::string(FIXTURES_DIR) + "/cube-poset.json");
  return doc;
}

void BM_pullback(benchmark::State& state) {
  CategoryDocument doc = cube();
  int f = doc.cat.morphism_index("inc_12_123");
  int g = doc.cat.morphism_index("inc_13_123");
  for (auto _ : state) {
    auto cone = pullback(doc.cat, f, g);
    benchmark::DoNotOptimize(cone);
  }
}
BENCHMARK(BM_pullback);

void BM_span_level(benchmark::State& state) {
  CategoryDocument doc = cube();
  RelativeCategory r = doc.relative();
  for (auto _ : state) {
    SpanLevel level = build_span_level(r, static_cast<int>(state.range(0)), 1000000000LL);
    benchmark::DoNotOptimize(level);
  }
}
BENCHMARK(BM_span_level)->Arg(1)->Arg(2);

void BM_oracle_closure(benchmark::State& state) {
  CategoryDocument doc = cube();
  RelativeCategory r = doc.relative();
  for (auto _ : state) {
    OracleResult res = oracle_localize(r, static_cast<int>(state.range(0)), 1000);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_oracle_closure)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
