// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_LP_VECTOR_HPP_
#define BJLAB_LP_VECTOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace bjlab
{

/// Default orthogonality tolerance, relative to the norm of the base vector.
inline constexpr double kDefaultTol = 1e-7;

/// p-norm of a coordinate array, 1 <= p < inf. Scaled by the largest entry so
/// that large exponents neither overflow nor underflow.
double lp_norm(std::span<const double> coords, double p);

/// Conjugate exponent p/(p-1); requires p > 1.
double conjugate_exponent(double p);

/// A finitely supported element of l_p. Coordinates are a dense prefix,
/// index 1 is coords[0], everything beyond the prefix is zero.
class LpVector
{
public:
  LpVector(std::vector<double> coords, double p);

  static LpVector unit(std::size_t index, std::size_t length, double p);

  double p() const noexcept { return p_; }
  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<double> &coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  /// Coordinate access past the stored prefix returns 0.
  double at(std::size_t i) const noexcept { return i < coords_.size() ? coords_[i] : 0.0; }

  double norm() const { return lp_norm(coords_, p_); }
  bool is_zero() const noexcept;

  LpVector scaled(double alpha) const;
  LpVector normalized() const;
  /// x + lambda * y, padding the shorter operand with zeros.
  LpVector axpy(double lambda, const LpVector &y) const;
  LpVector padded(std::size_t length) const;

private:
  std::vector<double> coords_;
  double p_;
};

double norm_p(const LpVector &x);

/// Element of the dual l_{p*}, acting by the coordinate pairing.
class DualFunctional
{
public:
  DualFunctional(std::vector<double> coords, double p_star);

  double p_star() const noexcept { return p_star_; }
  const std::vector<double> &coords() const noexcept { return coords_; }
  double operator()(const LpVector &v) const;
  double norm() const { return lp_norm(coords_, p_star_); }

private:
  std::vector<double> coords_;
  double p_star_;
};

/// Duality map J with J(x)(x) = |x|^2 and |J(x)| = |x|. Requires p > 1.
DualFunctional dual_map(const LpVector &x);

struct LambdaMin
{
  double lambda_star;
  double min_value;
};

/// Minimizes lambda -> |x + lambda y| over [-R, R], R = 2|x|/|y| + 1.
LambdaMin bj_min_lambda(const LpVector &x, const LpVector &y);

/// Birkhoff-James orthogonality x _|_ y; `tol` is relative to |x|.
bool bj_orthogonal_vec(const LpVector &x, const LpVector &y, double tol = kDefaultTol);

/// Smooth-space criterion |J(x)(y)| <= tol |x| |y|. Requires p > 1.
bool bj_orthogonal_dual(const LpVector &x, const LpVector &y, double tol = kDefaultTol);

}  // namespace bjlab

#endif  // BJLAB_LP_VECTOR_HPP_
