// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_DIAGONAL_HPP_
#define BJLAB_DIAGONAL_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "bjlab/sequence.hpp"

namespace bjlab
{

/// One multiplicative factor of a derived diagonal: n -> seq(j), where
/// j = n + shift, or, when `rank_mask` is set, j = number of masked indices
/// <= n + shift. Rank-mapped factors must decay to zero.
struct Factor
{
  SequenceSpec seq;
  std::size_t shift = 0;
  std::optional<SequenceSpec> rank_mask;

  double operator()(std::size_t n) const;
  std::size_t mapped_index(std::size_t n) const;
};

struct Term
{
  double coef = 1.0;
  std::vector<Factor> factors;
};

/// Result of a supremum computation on a diagonal sequence. When `certified`
/// is set the supremum is exact (up to floating point rounding); otherwise it
/// is a lower bound and `residual` bounds the gap to the true value.
struct TailSup
{
  double sup_abs = 0.0;
  double limsup_abs = 0.0;
  bool certified = true;
  double residual = 0.0;
  bool attainment_known = true;
  Attainment attainment = Attainment::NotAttained;
  std::vector<std::size_t> indices;  // attaining indices when finite
};

/// Lazily evaluated diagonal sequence: a finite sum of products of closed-form
/// sequences under index shifts. Limits are exact per residue class; the
/// supremum is found by scanning a prefix and bounding everything beyond it
/// with interval arithmetic on the closed forms.
class Diagonal
{
public:
  Diagonal() = default;
  explicit Diagonal(SequenceSpec s);

  const std::vector<Term> &terms() const noexcept { return terms_; }

  double operator()(std::size_t n) const;

  /// The underlying closed-form sequence when this diagonal is just that.
  std::optional<SequenceSpec> as_sequence() const;

  std::size_t period() const;
  double limit(std::size_t residue) const;
  double limsup_abs() const;
  TailSup sup_analysis(std::size_t max_scan = std::size_t{1} << 18) const;

  /// n -> k_{n + delta}.
  Diagonal shifted(std::size_t delta) const;
  Diagonal scaled(double alpha) const;
  /// this + beta * other.
  Diagonal plus(const Diagonal &other, double beta) const;
  Diagonal times(const Factor &factor) const;

  /// Hull of the values at n0, n0 + stride, ... (and their limits), valid
  /// once n0 is past every override.
  Interval class_range(std::size_t n0, std::size_t stride) const;
  std::size_t settled_from() const;

private:

  std::vector<Term> terms_;
};

}  // namespace bjlab

#endif  // BJLAB_DIAGONAL_HPP_
