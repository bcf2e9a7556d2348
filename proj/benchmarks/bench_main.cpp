#include <benchmark/benchmark.h>

#include "lrdraw/construct.hpp"
#include "lrdraw/family.hpp"
#include "lrdraw/oracle.hpp"
#include "lrdraw/tree.hpp"

using namespace lrdraw;

namespace {

BinaryTree treeFor(const benchmark::State& state, bool family) {
  auto n = state.range(0);
  return family ? buildFamily(n, FamilyParams::defaults())
                : generateTree(TreeKind::BstShape, static_cast<int>(n), 42);
}

void BM_ConstructTwist438Bst(benchmark::State& state) {
  auto t = treeFor(state, false);
  for (auto _ : state)
    benchmark::DoNotOptimize(construct(t, ConstructParams::twist438()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConstructTwist438Bst)->Range(1 << 10, 1 << 18)->Complexity();

void BM_ConstructTwist437Family(benchmark::State& state) {
  auto t = treeFor(state, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(construct(t, ConstructParams::twist437()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConstructTwist437Family)->Range(1 << 10, 1 << 18)->Complexity();

void BM_BaselineBst(benchmark::State& state) {
  auto t = treeFor(state, false);
  for (auto _ : state) benchmark::DoNotOptimize(baselineConstruct(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BaselineBst)->Range(1 << 10, 1 << 18)->Complexity();

void BM_WstarFamily(benchmark::State& state) {
  auto t = treeFor(state, true);
  for (auto _ : state) benchmark::DoNotOptimize(wstar(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WstarFamily)->Range(1 << 6, 1 << 12)->Complexity();

void BM_AssembleBst(benchmark::State& state) {
  auto t = treeFor(state, false);
  auto dec = construct(t, ConstructParams::twist438());
  for (auto _ : state) benchmark::DoNotOptimize(assemble(t, dec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleBst)->Range(1 << 10, 1 << 18)->Complexity();

void BM_BuildFamily(benchmark::State& state) {
  auto params = FamilyParams::defaults();
  for (auto _ : state)
    benchmark::DoNotOptimize(buildFamily(state.range(0), params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildFamily)->Range(1 << 10, 1 << 20)->Complexity();

}  // namespace

BENCHMARK_MAIN();
