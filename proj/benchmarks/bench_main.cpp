#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ncplush/calculus.hpp"
#include "ncplush/certify.hpp"
#include "ncplush/decompose.hpp"
#include "ncplush/minimality.hpp"
#include "ncplush/oracle.hpp"
#include "ncplush/sampling.hpp"

using namespace ncplush;

namespace {

MatrixTuple point(const SymmetricRealization& r, Index n) {
  Rng rng(1, 2);
  return random_ball_tuple(rng, r.g(), n, 0.25 / std::max(1.0, coefficient_norm_sum(r)));
}

void BM_Eval(benchmark::State& state) {
  const SymmetricRealization r = gen_random(4, 2, 7);
  const MatrixTuple x = point(r, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval(r, x));
}
BENCHMARK(BM_Eval)->Arg(1)->Arg(4)->Arg(16);

void BM_ComplexHessian(benchmark::State& state) {
  const SymmetricRealization r = gen_random(4, 2, 7);
  const MatrixTuple x = point(r, state.range(0));
  Rng rng(3, 4);
  const MatrixTuple h = random_unit_tuple(rng, r.g(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(complex_hessian_eval(r, x, h));
}
BENCHMARK(BM_ComplexHessian)->Arg(1)->Arg(4)->Arg(16);

void BM_MinimalReduce(benchmark::State& state) {
  const SymmetricRealization r = testing::F4();
  for (auto _ : state) benchmark::DoNotOptimize(minimal_reduce(r));
}
BENCHMARK(BM_MinimalReduce);

void BM_CertifyPlush(benchmark::State& state) {
  const SymmetricRealization r = minimal_reduce(gen_plush(state.range(0), 2, 2, 11));
  for (auto _ : state) benchmark::DoNotOptimize(certify_plush(r));
}
BENCHMARK(BM_CertifyPlush)->Arg(1)->Arg(3);

void BM_Decompose(benchmark::State& state) {
  const SymmetricRealization r = minimal_reduce(gen_plush(state.range(0), 2, 2, 11));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(r));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(3);

}  // namespace
BENCHMARK_MAIN();
