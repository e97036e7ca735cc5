// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_ORTHOGONALITY_HPP_
#define BJLAB_ORTHOGONALITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bjlab/lp_vector.hpp"
#include "bjlab/norms.hpp"
#include "bjlab/operator.hpp"

namespace bjlab
{

struct OrthogonalityVerdict
{
  bool orthogonal = false;
  double lambda_star = 0.0;
  double min_norm = 0.0;
  double tol_used = 0.0;  // absolute: tol * |T|
  double t_norm = 0.0;
};

/// T _|_B A in the operator norm: min over lambda of |T + lambda A| against
/// |T|. Golden section on [-R, R], R = 2|T|/|A| + 1.
OrthogonalityVerdict bj_orthogonal_op(const OperatorRep &t, const OperatorRep &a,
                                      double tol = kDefaultTol, const NormOptions &opts = {});

struct WitnessReport
{
  bool found = false;
  std::optional<LpVector> witness;
  /// Hilbert search: |<Tx, Ax>|. Otherwise the smallest observed margin
  /// |Tx| - min_lambda |Tx + lambda Ax|.
  double inner_residual = 0.0;
  std::size_t samples_examined = 0;
  /// True when the search covered M_T completely (finite, certified,
  /// dimension <= 2); a negative answer is then a proof up to the grid
  /// resolution recorded in `note`.
  bool exhaustive = false;
  std::string note;
};

/// Searches the top singular subspace sphere for x with <Tx, Ax> = 0.
WitnessReport hilbert_bj_criterion(const DenseOp &t, const DenseOp &a, double tol = kDefaultTol,
                                   const NormOptions &opts = {});

/// Unit vectors drawn from a norm-attainment description: every listed
/// representative/basis vector first, then seeded combinations.
std::vector<LpVector> sample_attainment_set(const MTDescription &mt, std::size_t count,
                                            std::uint64_t seed);

/// Looks for x in M_T with Tx _|_B Ax. Requires T _|_B A.
WitnessReport bs_witness_search(const OperatorRep &t, const OperatorRep &a, double tol = kDefaultTol,
                                const NormOptions &opts = {});

/// |Tx| - min_lambda |Tx + lambda Ax|; zero when Ax = 0.
double pointwise_margin(const OperatorRep &t, const OperatorRep &a, const LpVector &x);

}  // namespace bjlab

#endif  // BJLAB_ORTHOGONALITY_HPP_
