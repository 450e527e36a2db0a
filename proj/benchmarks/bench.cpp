#include <benchmark/benchmark.h>

#include "hqx/family.hpp"
#include "hqx/hecke_spectral.hpp"
#include "hqx/pipeline.hpp"
#include "hqx/random_forms.hpp"
#include "hqx/symbolic.hpp"

using namespace hqx;

namespace {

SplitPtr five_eleven(long prec) { return split_prime(make_field(5), 11, prec); }

void BM_PadicMul(benchmark::State& state) {
  Rng rng(1);
  const long prec = state.range(0);
  PadicNum a = random_padic_unit(11, prec, rng), b = random_padic_unit(11, prec, rng);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_PadicMul)->Arg(3)->Arg(20)->Arg(100);

void BM_HeckeRoots(benchmark::State& state) {
  const long prec = state.range(0);
  PadicNum a = PadicNum::from_integer(11, 3, prec);
  for (auto _ : state) benchmark::DoNotOptimize(hecke_roots(a, 2, 11, prec));
}
BENCHMARK(BM_HeckeRoots)->Arg(3)->Arg(20);

void BM_Enumerate(benchmark::State& state) {
  FieldPtr F = make_field(5);
  for (auto _ : state) benchmark::DoNotOptimize(F->enumerate(state.range(0), false));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Enumerate)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_OperatorChain(benchmark::State& state) {
  Rng rng(2);
  SplitPtr s = five_eleven(3);
  HilbertQExp f = random_hilbert_form(s, 3, 2, state.range(0), rng);
  for (auto _ : state) {
    HilbertQExp g = deplete_pi(sub(f, v_pi(u_pi(f))));
    benchmark::DoNotOptimize(u_pi_prime(v_pi_prime(g)));
  }
}
BENCHMARK(BM_OperatorChain)->Arg(50)->Arg(150);

void BM_FormalEigenform(benchmark::State& state) {
  Rng rng(3);
  SplitPtr s = five_eleven(4);
  auto seed = random_seed(s, 4, state.range(0), rng);
  PadicNum a = PadicNum::from_integer(11, 3, 4), ap = PadicNum::from_integer(11, 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(make_formal_eigenform(s, 4, seed, a, ap, 2, state.range(0)));
}
BENCHMARK(BM_FormalEigenform)->Arg(60)->Arg(200);

void BM_AjIntegrand(benchmark::State& state) {
  Rng rng(4);
  SplitPtr s = five_eleven(3);
  HilbertQExp f = random_hilbert_form(s, 3, 2, state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(aj_integrand(f, 1));
}
BENCHMARK(BM_AjIntegrand)->Arg(50)->Arg(150);

void BM_FourTermRecombination(benchmark::State& state) {
  Rng rng(5);
  SplitPtr s = five_eleven(4);
  SpectralData sd = spectral_data(PadicNum::from_integer(11, 3, 4), PadicNum::zero(11), 2, 4);
  HilbertQExp f = make_formal_eigenform(s, 4, random_seed(s, 4, 80, rng), sd.a_pi, sd.a_pi_prime, 2, 80);
  for (auto _ : state) benchmark::DoNotOptimize(four_term_recombination(f, sd));
}
BENCHMARK(BM_FourTermRecombination);

void BM_EOrd(benchmark::State& state) {
  Rng rng(6);
  ModularQExp g = random_modular_form(3, 6, 2, 3000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(e_ord_approx(g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EOrd)->Arg(2)->Arg(3);

void BM_EulerSummation(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_euler_summation(k, 1));
}
BENCHMARK(BM_EulerSummation)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Scholl(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scholl_idempotent(n));
}
BENCHMARK(BM_Scholl)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_SpecializeH(benchmark::State& state) {
  Rng rng(7);
  SplitPtr s = five_eleven(3);
  HilbertFamily F;
  F.split = s;
  F.trace_bound = state.range(0);
  for (const IntElem& nu : s->field()->enumerate(F.trace_bound, false)) {
    F.coeffs.emplace(s->field()->key(nu), LambdaCoeff::constant(random_padic_integer(11, 3, rng)));
  }
  LambdaH H = build_lambda_h(F, 3);
  for (auto _ : state) benchmark::DoNotOptimize(specialize_h_raw(H, -1, 0));
}
BENCHMARK(BM_SpecializeH)->Arg(40)->Arg(130);

void BM_Pipeline(benchmark::State& state) {
  Rng rng(8);
  SplitPtr s = five_eleven(5);
  HilbertQExp f = random_hilbert_form(s, 5, 2, 80, rng);
  std::vector<PipelineOp> ops{{"deplete_pi_prime"}, {"theta_prime_inverse", true, 2}, {"restrict"}, {"deplete_p"}};
  for (auto _ : state) benchmark::DoNotOptimize(run_ops(f, ops));
}
BENCHMARK(BM_Pipeline);

}  // namespace

BENCHMARK_MAIN();
