// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace bjlab
{

SvdResult jacobi_svd(const Eigen::MatrixXd &a, int max_sweeps)
{
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd u = a;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double tol = std::numeric_limits<double>::epsilon() * std::max<double>(1.0, static_cast<double>(a.rows()));

  SvdResult out;
  double worst = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep)
  {
    bool rotated = false;
    worst = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
    {
      for (Eigen::Index j = i + 1; j < n; ++j)
      {
        const double alpha = u.col(i).squaredNorm();
        const double beta = u.col(j).squaredNorm();
        const double gamma = u.col(i).dot(u.col(j));
        if (alpha == 0.0 || beta == 0.0) continue;
        const double cosine = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, cosine);
        if (cosine <= tol) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index k = 0; k < u.rows(); ++k)
        {
          const double ui = u(k, i), uj = u(k, j);
          u(k, i) = c * ui - s * uj;
          u(k, j) = s * ui + c * uj;
        }
        for (Eigen::Index k = 0; k < n; ++k)
        {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
    out.sweeps = sweep + 1;
    if (!rotated) break;
  }
  out.off_orthogonality = worst;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Eigen::VectorXd sv(n);
  for (Eigen::Index k = 0; k < n; ++k) sv(k) = u.col(k).norm();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return sv(x) > sv(y); });
  out.singular_values.resize(n);
  out.right_vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
  {
    out.singular_values(k) = sv(order[static_cast<std::size_t>(k)]);
    out.right_vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

SpectralLevels spectral_levels(const Eigen::VectorXd &descending, double gap_threshold, double merge_tol)
{
  SpectralLevels out;
  if (descending.size() == 0) return out;
  out.top = descending(0);
  out.multiplicity = 1;
  const double scale = std::max(out.top, std::numeric_limits<double>::min());
  bool found_next = false;
  for (Eigen::Index k = 1; k < descending.size(); ++k)
  {
    const double gap = out.top - descending(k);
    if (gap <= merge_tol * scale)
    {
      ++out.multiplicity;
      continue;
    }
    if (gap < gap_threshold * scale) out.borderline = true;
    if (!found_next)
    {
      out.next = descending(k);
      found_next = true;
    }
  }
  return out;
}

}  // namespace bjlab
