// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_SPECTRAL_HPP_
#define BJLAB_SPECTRAL_HPP_

#include <Eigen/Dense>
#include <cstddef>

namespace bjlab
{

struct SvdResult
{
  Eigen::VectorXd singular_values;  // descending
  Eigen::MatrixXd right_vectors;    // columns match singular_values
  int sweeps = 0;
  double off_orthogonality = 0.0;   // max |cos| between final columns
};

/// One-sided (Hestenes) Jacobi SVD. Rotates column pairs of A until they are
/// mutually orthogonal; the accumulated rotations are the right singular
/// vectors, i.e. the eigenvectors of A^T A.
SvdResult jacobi_svd(const Eigen::MatrixXd &a, int max_sweeps = 100);

/// Grouping of the leading singular values into the top level.
struct SpectralLevels
{
  double top = 0.0;
  std::size_t multiplicity = 0;
  double next = 0.0;       // largest value below the top level, 0 if none
  bool borderline = false; // some value sits in the ambiguous band below top
};

/// Values within `merge_tol * top` of the top are the same level; values
/// whose distance to top lies in (merge_tol * top, gap_threshold * top) make
/// the multiplicity ambiguous.
SpectralLevels spectral_levels(const Eigen::VectorXd &descending, double gap_threshold,
                               double merge_tol);

/// Default relative tolerance under which two singular values are merged.
inline constexpr double kMergeTol = 64.0 * 2.220446049250313e-16;

}  // namespace bjlab

#endif  // BJLAB_SPECTRAL_HPP_
