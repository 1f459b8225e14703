#include <benchmark/benchmark.h>

#include "itl/countermodel.hpp"
#include "itl/normalize.hpp"
#include "itl/parse.hpp"
#include "itl/print.hpp"
#include "itl/prover.hpp"
#include "itl/worlds.hpp"

using namespace itl;

namespace {

Signature bench_sig() {
  return parse_signature(
      "type e\n"
      "const p : <>\n"
      "const q : <>\n"
      "const r : <>\n"
      "const P : <e>\n"
      "const c : e\n"
      "const d : e\n");
}

const char* kTerm =
    "forall x:e . (P x & p) -> exists y:e . ((lam z:e . P z) y | x = y)";

void BM_parse(benchmark::State& state) {
  Signature sig = bench_sig();
  for (auto _ : state) benchmark::DoNotOptimize(parse_term(kTerm, sig));
}
BENCHMARK(BM_parse);

void BM_print_desugared(benchmark::State& state) {
  Signature sig = bench_sig();
  for (auto _ : state) {
    // fresh nodes each round, or the print cache hides the cost
    Term copy = desugar(parse_term(kTerm, sig));
    benchmark::DoNotOptimize(print_term(copy));
  }
}
BENCHMARK(BM_print_desugared);

void BM_normalize(benchmark::State& state) {
  Signature sig = bench_sig();
  Term t = parse_term("(lam x:e . (lam y:e . P y) x) c", sig);
  for (auto _ : state) benchmark::DoNotOptimize(beta_eta_normalize(desugar(t)));
}
BENCHMARK(BM_normalize);

void BM_prove_propositional(benchmark::State& state) {
  Signature sig = bench_sig();
  Theory empty;
  empty.name = "empty";
  Sequent goal = parse_sequent("p -> q, q -> r => p -> r", sig);
  SearchBudget b;
  for (auto _ : state) benchmark::DoNotOptimize(prove(goal, empty, b, sig).found());
}
BENCHMARK(BM_prove_propositional);

void BM_saturate_regression(benchmark::State& state) {
  Signature sig = bench_sig();
  Sequent goal = parse_sequent("=> p = q, q = r, r = p", sig);
  SearchBudget b;
  for (auto _ : state) benchmark::DoNotOptimize(saturate(goal, b, sig).open());
}
BENCHMARK(BM_saturate_regression);

void BM_countermodel(benchmark::State& state) {
  Signature sig = bench_sig();
  Sequent goal = parse_sequent("=> p = q, q = r, r = p", sig);
  SearchBudget b;
  auto sat = saturate(goal, b, sig);
  for (auto _ : state) benchmark::DoNotOptimize(build_countermodel(*sat.branch, sig));
}
BENCHMARK(BM_countermodel);

void BM_eval_worlds_model(benchmark::State& state) {
  FiniteModel m = worlds_demo_model();
  Term stmt = parse_term("forall w:<<>> . Omega w -> (w (~p) <-> ~(w p))", m.sig);
  for (auto _ : state) benchmark::DoNotOptimize(eval_truth(m, stmt));
}
BENCHMARK(BM_eval_worlds_model);

}  // namespace

BENCHMARK_MAIN();
