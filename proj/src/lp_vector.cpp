// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/lp_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bjlab/error.hpp"
#include "bjlab/golden.hpp"

namespace bjlab
{

namespace
{

void check_exponent(double p)
{
  if (!(p >= 1.0) || !std::isfinite(p))
  {
    throw Error(ErrorCode::UnsupportedExponent,
                "exponent must satisfy 1 <= p < inf, got " + std::to_string(p));
  }
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double lp_norm(std::span<const double> coords, double p)
{
  double scale = 0.0;
  for (double c : coords) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  if (p == 1.0)
  {
    for (double c : coords) acc += std::abs(c);
    return acc;
  }
  if (p == 2.0)
  {
    for (double c : coords)
    {
      const double r = c / scale;
      acc += r * r;
    }
    return scale * std::sqrt(acc);
  }
  for (double c : coords) acc += std::pow(std::abs(c) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

double conjugate_exponent(double p)
{
  if (!(p > 1.0) || !std::isfinite(p))
  {
    throw Error(ErrorCode::UnsupportedExponent, "conjugate exponent needs 1 < p < inf");
  }
  return p / (p - 1.0);
}

LpVector::LpVector(std::vector<double> coords, double p) : coords_(std::move(coords)), p_(p)
{
  check_exponent(p_);
  for (double c : coords_)
  {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidParameters, "non-finite coordinate");
  }
}

LpVector LpVector::unit(std::size_t index, std::size_t length, double p)
{
  std::vector<double> c(std::max(length, index), 0.0);
  c.at(index - 1) = 1.0;
  return LpVector(std::move(c), p);
}

bool LpVector::is_zero() const noexcept
{
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

LpVector LpVector::scaled(double alpha) const
{
  std::vector<double> c(coords_);
  for (double &v : c) v *= alpha;
  return LpVector(std::move(c), p_);
}

LpVector LpVector::normalized() const
{
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::DegenerateInput, "cannot normalize the zero vector");
  return scaled(1.0 / n);
}

LpVector LpVector::axpy(double lambda, const LpVector &y) const
{
  std::vector<double> c(std::max(size(), y.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = at(i) + lambda * y.at(i);
  return LpVector(std::move(c), p_);
}

LpVector LpVector::padded(std::size_t length) const
{
  std::vector<double> c(coords_);
  if (c.size() < length) c.resize(length, 0.0);
  return LpVector(std::move(c), p_);
}

double norm_p(const LpVector &x) { return x.norm(); }

DualFunctional::DualFunctional(std::vector<double> coords, double p_star)
  : coords_(std::move(coords)), p_star_(p_star)
{
}

double DualFunctional::operator()(const LpVector &v) const
{
  double acc = 0.0;
  const std::size_t n = std::min(coords_.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) acc += coords_[i] * v[i];
  return acc;
}

DualFunctional dual_map(const LpVector &x)
{
  if (x.p() == 1.0)
  {
    throw Error(ErrorCode::UnsupportedExponent, "duality map is not single-valued for p = 1");
  }
  const double q = conjugate_exponent(x.p());
  const double nx = x.norm();
  std::vector<double> c(x.size(), 0.0);
  if (nx == 0.0) return DualFunctional(std::move(c), q);
  // |x|^(2-p) sign(x_i) |x_i|^(p-1), written relative to |x| for stability.
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    c[i] = nx * sign(x[i]) * std::pow(std::abs(x[i]) / nx, x.p() - 1.0);
  }
  return DualFunctional(std::move(c), q);
}

LambdaMin bj_min_lambda(const LpVector &x, const LpVector &y)
{
  if (x.p() != y.p()) throw Error(ErrorCode::InvalidParameters, "vectors live in different l_p");
  if (y.is_zero()) throw Error(ErrorCode::DegenerateDirection, "direction y is zero");
  const std::size_t n = std::max(x.size(), y.size());
  const LpVector xp = x.padded(n), yp = y.padded(n);
  const double nx = xp.norm(), ny = yp.norm();
  const double radius = 2.0 * nx / ny + 1.0;

  std::vector<double> work(n);
  auto f = [&](double lambda)
  {
    for (std::size_t i = 0; i < n; ++i) work[i] = xp[i] + lambda * yp[i];
    return lp_norm(work, xp.p());
  };
  GoldenResult g = golden_section_minimize(f, -radius, radius, 1e-10);
  if (nx <= g.value) return {0.0, nx};
  return {g.argmin, g.value};
}

bool bj_orthogonal_vec(const LpVector &x, const LpVector &y, double tol)
{
  if (x.is_zero() || y.is_zero())
  {
    throw Error(ErrorCode::DegenerateInput, "orthogonality test needs nonzero vectors");
  }
  const LambdaMin m = bj_min_lambda(x, y);
  return m.min_value >= x.norm() * (1.0 - tol);
}

bool bj_orthogonal_dual(const LpVector &x, const LpVector &y, double tol)
{
  if (x.is_zero() || y.is_zero())
  {
    throw Error(ErrorCode::DegenerateInput, "orthogonality test needs nonzero vectors");
  }
  const std::size_t n = std::max(x.size(), y.size());
  const LpVector yp = y.padded(n);
  const DualFunctional j = dual_map(x.padded(n));
  return std::abs(j(yp)) <= tol * x.norm() * yp.norm();
}

}  // namespace bjlab
