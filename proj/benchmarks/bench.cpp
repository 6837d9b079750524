#include <benchmark/benchmark.h>

#include <memory>
#include <utility>
#include <vector>

#include "fialg/decompose.hpp"

namespace {

using namespace fialg;

std::shared_ptr<const Preorder> chain(int n) {
  std::vector<std::pair<int, int>> gen;
  for (int i = 0; i + 1 < n; ++i) gen.emplace_back(i, i + 1);
  return Preorder::from_generators(n, gen);
}

// Alternating vee/wedge fan: many short cycles once closed, so the
// classification has real block structure to find.
std::shared_ptr<const Preorder> fan(int n) {
  std::vector<std::pair<int, int>> gen;
  for (int i = 0; i + 2 < n; i += 2) {
    gen.emplace_back(i, i + 1);
    gen.emplace_back(i + 2, i + 1);
  }
  return Preorder::from_generators(n, gen);
}

FiElement dense_upper(const AlgebraContext& ctx) {
  FiElement a = ctx.zero();
  const Preorder& p = *ctx.carrier;
  int k = 1;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y))
        a.set(x, y, RingValue::from_int(ctx.ring, Int((k++ % 5) - 2)));
  return a;
}

void BM_Convolution(benchmark::State& state) {
  AlgebraContext ctx = AlgebraContext::make(chain(int(state.range(0))),
                                            RingDescriptor::integers());
  FiElement a = dense_upper(ctx);
  FiElement b = dense_upper(ctx);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Convolution)->Arg(8)->Arg(16)->Arg(32);

void BM_EdgeClassification(benchmark::State& state) {
  auto p = fan(int(state.range(0)));
  for (auto _ : state) {
    EdgeClassification cls(p);
    benchmark::DoNotOptimize(cls.class_count());
  }
}
BENCHMARK(BM_EdgeClassification)->Arg(16)->Arg(64)->Arg(256);

void BM_NestedCommutator(benchmark::State& state) {
  AlgebraContext ctx =
      AlgebraContext::make(chain(12), RingDescriptor::integers());
  std::vector<FiElement> tuple(std::size_t(state.range(0)),
                               dense_upper(ctx));
  for (auto _ : state)
    benchmark::DoNotOptimize(nested_commutator(tuple));
}
BENCHMARK(BM_NestedCommutator)->Arg(2)->Arg(3)->Arg(5);

void BM_Decompose(benchmark::State& state) {
  AlgebraContext ctx = AlgebraContext::make(
      fan(int(state.range(0))), RingDescriptor::int_polynomials());
  FiElement alpha = ctx.zero();
  for (auto [x, y] : ctx.carrier->strict_edges())
    alpha.set(x, y, RingValue::from_int(ctx.ring, Int(x - y)));
  MapSpec spec = make_inner(ctx, alpha);
  ProbeBudget budget;
  budget.tuples = 50;
  for (auto _ : state) {
    DecompositionReport report = decompose(spec.black_box(), ctx, 2, budget);
    benchmark::DoNotOptimize(report.decomposable);
  }
}
BENCHMARK(BM_Decompose)->Arg(5)->Arg(9);

}  // namespace

BENCHMARK_MAIN();
