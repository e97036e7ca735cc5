// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bjlab/error.hpp"
#include "bjlab/norms.hpp"

namespace bjlab
{

namespace
{

double vec_norm(const Eigen::VectorXd &v, double p)
{
  return lp_norm(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), p);
}

// sign(v_i) (|v_i| / max|v|)^e, the unnormalized duality direction.
Eigen::VectorXd dual_direction(const Eigen::VectorXd &v, double e)
{
  const double m = v.cwiseAbs().maxCoeff();
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
  {
    const double a = std::abs(v[i]) / m;
    out[i] = a == 0.0 ? 0.0 : std::copysign(e == 0.0 ? 1.0 : std::pow(a, e), v[i]);
  }
  return out;
}

// Unit vector of l_p maximizing <z, x>.
Eigen::VectorXd domain_step(const Eigen::VectorXd &z, double p)
{
  if (p == 1.0)
  {
    Eigen::Index k = 0;
    z.cwiseAbs().maxCoeff(&k);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(z.size());
    x[k] = z[k] < 0 ? -1.0 : 1.0;
    return x;
  }
  Eigen::VectorXd x = dual_direction(z, 1.0 / (p - 1.0));
  return x / vec_norm(x, p);
}

StartResult iterate(const DenseOp &op, Eigen::VectorXd x, const NormOptions &opts)
{
  const Eigen::MatrixXd &A = op.matrix;
  Eigen::VectorXd y = A * x;
  double val = vec_norm(y, op.q);
  Eigen::VectorXd best_x = x;
  double best = val;
  double step = 0.0;
  int it = 0;
  bool converged = false;
  for (; it < opts.max_iter; ++it)
  {
    if (val == 0.0)
    {
      converged = true;
      break;
    }
    const Eigen::VectorXd z = A.transpose() * dual_direction(y, op.q - 1.0);
    if (z.cwiseAbs().maxCoeff() == 0.0)
    {
      converged = true;
      break;
    }
    x = domain_step(z, op.p);
    y = A * x;
    const double next = vec_norm(y, op.q);
    step = std::abs(next - val);
    val = next;
    if (val > best)
    {
      best = val;
      best_x = x;
    }
    if (step <= opts.step_tol * val)
    {
      converged = true;
      ++it;
      break;
    }
  }
  return StartResult{LpVector(std::vector<double>(best_x.data(), best_x.data() + best_x.size()), op.p),
                     best, it, converged, step};
}

}  // namespace

StartResult power_iterate(const DenseOp &op, LpVector start, const NormOptions &opts)
{
  const auto n = static_cast<std::size_t>(op.matrix.cols());
  if (start.size() != n) throw Error(ErrorCode::DimensionMismatch, "start vector length differs from column count");
  if (start.is_zero()) throw Error(ErrorCode::DegenerateInput, "zero start vector");
  const LpVector s = start.normalized();
  return iterate(op, Eigen::Map<const Eigen::VectorXd>(s.coords().data(), static_cast<Eigen::Index>(n)), opts);
}

std::vector<StartResult> multistart_power(const DenseOp &op, const NormOptions &opts)
{
  const Eigen::Index n = op.matrix.cols();
  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index i = 0; i < n; ++i) starts.push_back(Eigen::VectorXd::Unit(n, i));
  std::mt19937_64 gen(opts.seed);
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < opts.random_starts; ++k)
  {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(gen);
    const double nv = vec_norm(v, op.p);
    if (nv == 0.0) continue;
    starts.push_back(v / nv);
  }

  const auto count = static_cast<long>(starts.size());
  std::vector<StartResult> out(starts.size(), StartResult{LpVector({}, op.p), 0.0, 0, false, 0.0});
  if (opts.execution == Execution::Parallel)
  {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = iterate(op, starts[static_cast<std::size_t>(i)], opts);
  }
  else
  {
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = iterate(op, starts[static_cast<std::size_t>(i)], opts);
  }
  return out;
}

NormCertificate sphere_grid_norm(const DenseOp &op, std::size_t resolution, Execution execution)
{
  const Eigen::Index n = op.matrix.cols();
  if (n < 1 || n > 3) throw Error(ErrorCode::InvalidParameters, "grid oracle needs 1 <= n <= 3");
  if (resolution < 2) throw Error(ErrorCode::InvalidParameters, "grid resolution must be at least 2");
  const double pi = std::numbers::pi;

  auto point = [&](std::size_t i, std::size_t j)
  {
    Eigen::VectorXd x(n);
    if (n == 1)
      x[0] = 1.0;
    else if (n == 2)
    {
      const double t = pi * static_cast<double>(i) / static_cast<double>(resolution);
      x << std::cos(t), std::sin(t);
    }
    else
    {
      const double th = 0.5 * pi * static_cast<double>(i) / static_cast<double>(resolution - 1);
      const double ph = pi * static_cast<double>(j) / static_cast<double>(resolution);
      x << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
    }
    return Eigen::VectorXd(x / vec_norm(x, op.p));
  };

  const std::size_t rows = n == 1 ? 1 : resolution;
  const std::size_t cols = n == 3 ? 2 * resolution : 1;
  std::vector<double> row_best(rows, -1.0);
  std::vector<std::size_t> row_arg(rows, 0);
  auto scan_row = [&](std::size_t i)
  {
    for (std::size_t j = 0; j < cols; ++j)
    {
      const double v = vec_norm(op.matrix * point(i, j), op.q);
      if (v > row_best[i])
      {
        row_best[i] = v;
        row_arg[i] = j;
      }
    }
  };
  const auto r = static_cast<long>(rows);
  if (execution == Execution::Parallel)
  {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < r; ++i) scan_row(static_cast<std::size_t>(i));
  }
  else
  {
    for (long i = 0; i < r; ++i) scan_row(static_cast<std::size_t>(i));
  }

  std::size_t bi = 0;
  for (std::size_t i = 1; i < rows; ++i)
    if (row_best[i] > row_best[bi]) bi = i;
  const Eigen::VectorXd x = point(bi, row_arg[bi]);
  NormCertificate c;
  c.value = row_best[bi];
  c.maximizer = LpVector(std::vector<double>(x.data(), x.data() + x.size()), op.p);
  c.method = NormMethod::GridOracle;
  c.residual = 0.0;
  return c;
}

}  // namespace bjlab
