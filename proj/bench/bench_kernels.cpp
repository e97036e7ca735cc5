// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference against the OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "bjlab/bsemrl.hpp"
#include "bjlab/suites.hpp"

using namespace bjlab;

namespace
{

Execution mode(const benchmark::State &s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

DenseOp random_dense(Eigen::Index n, double p, double q)
{
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return make_dense(Eigen::MatrixXd::NullaryExpr(n, n, [&] { return u(gen); }), p, q);
}

void BM_Multistart(benchmark::State &state)
{
  const DenseOp op = random_dense(12, 1.5, 3.0);
  NormOptions o;
  o.random_starts = 32;
  o.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(multistart_power(op, o));
}
BENCHMARK(BM_Multistart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SphereGrid(benchmark::State &state)
{
  const DenseOp op = random_dense(3, 3.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_grid_norm(op, 200, mode(state)));
}
BENCHMARK(BM_SphereGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LambdaGrid(benchmark::State &state)
{
  const StructuredOp t = make_structured(Eigen::MatrixXd::Identity(2, 2) * 0.5, SequenceSpec::periodic({1.0, -0.3}), 3.0);
  const OperatorRep a = compose_diag_weights(OperatorRep{t}, SequenceSpec::power(0.0, 1.0, 2.0));
  NormOptions o;
  o.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_grid_min(OperatorRep{t}, a, LambdaGrid{}, o));
}
BENCHMARK(BM_LambdaGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State &state)
{
  SuiteConfig c;
  c.n = 5;
  c.norm.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("prop-2.2", c));
}
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
