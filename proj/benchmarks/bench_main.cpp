#include <benchmark/benchmark.h>

#include "dualinv/cayley.hpp"
#include "dualinv/decomposition.hpp"
#include "dualinv/finite_group.hpp"
#include "dualinv/lattice.hpp"
#include "dualinv/sampling.hpp"

using namespace dualinv;

namespace {

Family family_arg(const benchmark::State& state) { return static_cast<Family>(state.range(0)); }

void BM_CayleyExact(benchmark::State& state) {
  ExactSpace s = standard_space(family_arg(state), 2, 3);
  Sampler rng(1);
  std::vector<LieElem<QuadRational>> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(rng.domain_lie(s));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cayley(s, xs[i++ % xs.size()]));
  state.SetLabel(to_string(family_arg(state)));
}
BENCHMARK(BM_CayleyExact)->DenseRange(0, 4);

void BM_FiberExact(benchmark::State& state) {
  ExactSpace s = standard_space(family_arg(state), 2, 3);
  Sampler rng(2);
  std::vector<GroupElem<QuadRational>> gs;
  for (int i = 0; i < 64; ++i) gs.push_back(cayley(s, rng.domain_lie(s)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fiber(s, gs[i++ % gs.size()]));
  state.SetLabel(to_string(family_arg(state)));
}
BENCHMARK(BM_FiberExact)->DenseRange(0, 4);

void BM_LatticeOfX(benchmark::State& state) {
  ExactSpace s = standard_space(family_arg(state), 2, 3);
  Sampler rng(3);
  std::vector<QMatrix> xs;
  for (int i = 0; i < 16; ++i) xs.push_back(rng.group(s).matrix);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lattice_of_x(s, xs[i++ % xs.size()]));
  state.SetLabel(to_string(family_arg(state)));
}
BENCHMARK(BM_LatticeOfX)->DenseRange(0, 4);

void BM_CayleyLevel(benchmark::State& state) {
  ExactSpace s = standard_space(Family::symplectic, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_cayley_level(s, 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CayleyLevel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DecomposeCoset(benchmark::State& state) {
  DecompositionContext ctx(standard_space(Family::symplectic, 2, 3), 3);
  ctx.congruence_image(1);
  Sampler rng(4);
  for (auto _ : state) {
    auto coset = make_coset(ctx, rng.residue_group(ctx.space()).matrix, 1);
    benchmark::DoNotOptimize(decompose(ctx, coset));
  }
}
BENCHMARK(BM_DecomposeCoset)->Unit(benchmark::kMillisecond);

void BM_ClassInversion(benchmark::State& state) {
  const auto family = state.range(0) == 0 ? FiniteFamily::GU : FiniteFamily::GL;
  const std::size_t n = state.range(0) == 0 ? 2 : 3;
  for (auto _ : state) {
    auto table = build_group(family, n, 3);
    auto classes = conjugacy_classes(table);
    benchmark::DoNotOptimize(verify_class_inversion(table, classes, true));
  }
  state.SetLabel(state.range(0) == 0 ? "GU2(9)" : "GL3(3)");
}
BENCHMARK(BM_ClassInversion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
