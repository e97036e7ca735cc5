// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_GOLDEN_HPP_
#define BJLAB_GOLDEN_HPP_

#include <cmath>
#include <utility>

namespace bjlab
{

struct GoldenResult
{
  double argmin;
  double value;
  int evaluations;
};

// Golden-section search for a convex (unimodal) function on [lo, hi]. The
// bracket is shrunk until its width drops below `width_tol`.
template <typename F>
GoldenResult golden_section_minimize(F &&f, double lo, double hi, double width_tol = 1e-10,
                                     int max_iter = 400)
{
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > width_tol; ++it)
  {
    if (fc <= fd)
    {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    }
    else
    {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  ++evals;
  GoldenResult best{mid, fm, evals};
  if (fc < best.value) best = {c, fc, evals};
  if (fd < best.value) best = {d, fd, evals};
  return best;
}

}  // namespace bjlab

#endif  // BJLAB_GOLDEN_HPP_
