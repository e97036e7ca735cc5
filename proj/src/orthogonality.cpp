// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bjlab/error.hpp"
#include "bjlab/golden.hpp"
#include "bjlab/spectral.hpp"

namespace bjlab
{

namespace
{

constexpr std::size_t kAngleGrid = 4096;
constexpr double kRefineWidth = 1e-10;
constexpr std::size_t kTailSamplePrefix = 8;

void check_compatible(const Canonical &t, const Canonical &a)
{
  const OperatorRep tr = to_rep(t), ar = to_rep(a);
  if (domain_exponent(tr) != domain_exponent(ar) || codomain_exponent(tr) != codomain_exponent(ar))
    throw Error(ErrorCode::InvalidParameters, "operators act between different spaces");
  const auto *dt = std::get_if<DenseOp>(&t);
  const auto *da = std::get_if<DenseOp>(&a);
  if (dt && da && (dt->matrix.rows() != da->matrix.rows() || dt->matrix.cols() != da->matrix.cols()))
    throw Error(ErrorCode::DimensionMismatch, "dense operators have different shapes");
}

// Pads or rejects x so that it fits the domain of op.
LpVector fit(const OperatorRep &op, const LpVector &x)
{
  const Canonical c = canonical(op);
  if (const auto *d = std::get_if<DenseOp>(&c))
  {
    const auto n = static_cast<std::size_t>(d->matrix.cols());
    if (x.size() < n) return x.padded(n);
    if (x.size() > n)
    {
      for (std::size_t i = n; i < x.size(); ++i)
        if (x[i] != 0.0) throw Error(ErrorCode::DimensionMismatch, "vector does not fit the dense domain");
      return LpVector(std::vector<double>(x.coords().begin(), x.coords().begin() + static_cast<std::ptrdiff_t>(n)), x.p());
    }
  }
  return x;
}

LpVector combine(const std::vector<LpVector> &basis, const std::vector<double> &c, double p)
{
  std::size_t len = 0;
  for (const auto &b : basis) len = std::max(len, b.size());
  LpVector x(std::vector<double>(len, 0.0), p);
  for (std::size_t i = 0; i < basis.size(); ++i) x = x.axpy(c[i], basis[i]);
  return x.normalized();
}

// Basis of a subspace-type description (explicit vectors, then coordinates).
std::vector<LpVector> basis_of(const std::vector<LpVector> &points, const std::vector<std::size_t> &coords,
                               double p, std::size_t coord_limit)
{
  std::vector<LpVector> b = points;
  for (std::size_t i = 0; i < coords.size() && i < coord_limit; ++i)
    b.push_back(LpVector::unit(coords[i], coords[i], p));
  return b;
}

std::vector<LpVector> sphere_samples(const std::vector<LpVector> &basis, double p, std::size_t count,
                                     std::mt19937_64 &gen)
{
  std::vector<LpVector> out;
  for (const auto &b : basis) out.push_back(b.normalized());
  if (basis.size() < 2) return out;
  if (basis.size() == 2)
  {
    for (std::size_t k = 1; out.size() < count && k < count; ++k)
    {
      const double th = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.push_back(combine(basis, {std::cos(th), std::sin(th)}, p));
    }
    return out;
  }
  std::normal_distribution<double> normal;
  while (out.size() < count)
  {
    std::vector<double> c(basis.size());
    for (double &v : c) v = normal(gen);
    out.push_back(combine(basis, c, p));
  }
  return out;
}

}  // namespace

OrthogonalityVerdict bj_orthogonal_op(const OperatorRep &t, const OperatorRep &a, double tol, const NormOptions &opts)
{
  const Canonical ct = canonical(t), ca = canonical(a);
  check_compatible(ct, ca);
  const double na = op_norm_value(ca, opts).first;
  if (na == 0.0) throw Error(ErrorCode::DegenerateDirection, "A = 0");
  const double nt = op_norm_value(ct, opts).first;
  const OperatorRep tr = to_rep(ct), ar = to_rep(ca);

  auto f = [&](double lambda) { return op_norm_value(linear_combination(tr, 1.0, ar, lambda), opts).first; };
  const double R = 2.0 * nt / na + 1.0;
  const GoldenResult g = golden_section_minimize(f, -R, R, kRefineWidth);

  OrthogonalityVerdict v;
  v.t_norm = nt;
  v.tol_used = tol * nt;
  v.lambda_star = g.value < nt ? g.argmin : 0.0;
  v.min_norm = std::min(g.value, nt);
  v.orthogonal = v.min_norm >= nt - v.tol_used;
  return v;
}

WitnessReport hilbert_bj_criterion(const DenseOp &t, const DenseOp &a, double tol, const NormOptions &opts)
{
  if (t.p != 2.0 || t.q != 2.0 || a.p != 2.0 || a.q != 2.0)
    throw Error(ErrorCode::UnsupportedExponent, "Hilbert criterion needs p = q = 2");
  check_compatible(Canonical{t}, Canonical{a});

  const SvdResult st = jacobi_svd(t.matrix);
  const SpectralLevels lv = spectral_levels(st.singular_values, opts.gap_threshold, opts.merge_tol);
  const Eigen::Index k = static_cast<Eigen::Index>(lv.multiplicity);
  const Eigen::MatrixXd V = st.right_vectors.leftCols(k);
  const Eigen::MatrixXd B = V.transpose() * t.matrix.transpose() * a.matrix * V;
  const Eigen::MatrixXd S = 0.5 * (B + B.transpose());
  const double na = jacobi_svd(a.matrix).singular_values(0);
  const double threshold = tol * lv.top * na;
  const double s_norm = S.cwiseAbs().rowwise().sum().maxCoeff();

  auto g = [&](const Eigen::VectorXd &c) { return c.dot(S * c); };
  WitnessReport r;
  Eigen::VectorXd best_c = Eigen::VectorXd::Unit(k, 0);
  double best = std::abs(g(best_c));
  auto consider = [&](const Eigen::VectorXd &c)
  {
    ++r.samples_examined;
    const double v = std::abs(g(c));
    if (v < best)
    {
      best = v;
      best_c = c;
    }
  };
  // Zero of g on the arc between c0 (g > 0) and c1 (g < 0), or vice versa.
  auto bisect = [&](Eigen::VectorXd c0, Eigen::VectorXd c1)
  {
    const double s0 = g(c0);
    for (int it = 0; it < 200 && (c0 - c1).norm() > kRefineWidth; ++it)
    {
      Eigen::VectorXd m = (c0 + c1).normalized();
      if ((g(m) > 0) == (s0 > 0))
        c0 = m;
      else
        c1 = m;
    }
    consider(c0);
    consider(c1);
  };

  std::ostringstream note;
  if (k == 1)
  {
    consider(best_c);
    r.exhaustive = !lv.borderline;
    note << "M_T = {+-v}";
  }
  else if (k == 2)
  {
    auto at = [](double th) { return Eigen::Vector2d(std::cos(th), std::sin(th)); };
    double prev_th = 0.0;
    double prev = g(at(0.0));
    consider(at(0.0));
    std::size_t best_k = 0;
    for (std::size_t i = 1; i <= kAngleGrid; ++i)
    {
      const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(kAngleGrid);
      const double cur = g(at(th));
      const double before = best;
      consider(at(th));
      if (best < before) best_k = i;
      if ((cur > 0) != (prev > 0) && cur != 0.0 && prev != 0.0) bisect(at(prev_th), at(th));
      prev = cur;
      prev_th = th;
    }
    const double h = std::numbers::pi / static_cast<double>(kAngleGrid);
    const double c = h * static_cast<double>(best_k);
    const GoldenResult gr =
      golden_section_minimize([&](double th) { return std::abs(g(at(th))); }, c - h, c + h, kRefineWidth);
    consider(at(gr.argmin));
    r.exhaustive = !lv.borderline;
    note << "angle grid " << kAngleGrid << " refined to " << kRefineWidth
         << "; |d/dtheta <Tx,Ax>| <= " << 2.0 * s_norm;
  }
  else
  {
    std::vector<Eigen::VectorXd> starts;
    for (Eigen::Index i = 0; i < k; ++i) starts.push_back(Eigen::VectorXd::Unit(k, i));
    std::mt19937_64 gen(opts.seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 16; ++i)
    {
      Eigen::VectorXd c(k);
      for (Eigen::Index j = 0; j < k; ++j) c[j] = normal(gen);
      starts.push_back(c.normalized());
    }
    std::optional<Eigen::VectorXd> pos, neg;
    for (const auto &c : starts)
    {
      consider(c);
      const double v = g(c);
      if (v > 0 && !pos) pos = c;
      if (v < 0 && !neg) neg = c;
    }
    const double eta = s_norm > 0 ? 0.5 / s_norm : 0.0;
    for (std::size_t s = 0; s < starts.size() && !(pos && neg) && eta > 0; ++s)
    {
      Eigen::VectorXd c = starts[s];
      for (int it = 0; it < 500; ++it)
      {
        const double v = g(c);
        c = (c - eta * (v > 0 ? 1.0 : -1.0) * (S * c)).normalized();
        consider(c);
        const double w = g(c);
        if (w > 0 && !pos) pos = c;
        if (w < 0 && !neg) neg = c;
        if (pos && neg) break;
      }
    }
    if (pos && neg) bisect(*pos, *neg);
    note << "multistart projected descent, " << starts.size() << " starts";
  }

  r.inner_residual = best;
  r.found = best <= threshold;
  const Eigen::VectorXd x = V * best_c;
  r.witness = LpVector(std::vector<double>(x.data(), x.data() + x.size()), 2.0);
  if (!r.found && !r.exhaustive) note << "; negative answer is evidence only";
  r.note = note.str();
  return r;
}

std::vector<LpVector> sample_attainment_set(const MTDescription &mt, std::size_t count, std::uint64_t seed)
{
  std::mt19937_64 gen(seed);
  switch (mt.kind)
  {
  case MTKind::Empty: return {};
  case MTKind::FinitePointPairs:
  {
    std::vector<LpVector> out;
    for (const auto &x : mt.points) out.push_back(x.normalized());
    return out;
  }
  case MTKind::SubspaceSphere:
    return sphere_samples(basis_of(mt.points, mt.coord_indices, mt.p, kTailSamplePrefix), mt.p, count, gen);
  case MTKind::HeadTailProduct:
  {
    const std::vector<LpVector> head =
      mt.head_is_subspace ? sphere_samples(mt.points, mt.p, std::max<std::size_t>(count / 8, 4), gen) : mt.points;
    const std::vector<LpVector> tail =
      sphere_samples(basis_of({}, mt.coord_indices, mt.p, kTailSamplePrefix), mt.p, std::max<std::size_t>(count / 8, 4), gen);
    std::vector<LpVector> out;
    for (const auto &h : head) out.push_back(h.normalized());
    for (const auto &t : tail) out.push_back(t);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> hi(0, head.size() - 1), ti(0, tail.size() - 1);
    while (out.size() < count && !head.empty() && !tail.empty())
    {
      const double s = unif(gen);
      // Disjoint supports: |a h + b t|^p = |a|^p + |b|^p.
      const LpVector x = head[hi(gen)].scaled(std::pow(s, 1.0 / mt.p)).axpy(std::pow(1.0 - s, 1.0 / mt.p), tail[ti(gen)]);
      out.push_back(x);
    }
    return out;
  }
  }
  return {};
}

double pointwise_margin(const OperatorRep &t, const OperatorRep &a, const LpVector &x)
{
  const LpVector u = bjlab::apply(t, fit(t, x));
  const LpVector v = bjlab::apply(a, fit(a, x));
  if (v.is_zero() || u.is_zero()) return 0.0;
  const LambdaMin lm = bj_min_lambda(u, v);
  return std::max(0.0, u.norm() - lm.min_value);
}

WitnessReport bs_witness_search(const OperatorRep &t, const OperatorRep &a, double tol, const NormOptions &opts)
{
  const OrthogonalityVerdict v = bj_orthogonal_op(t, a, tol, opts);
  if (!v.orthogonal)
    throw Error(ErrorCode::NotOrthogonalPair, "T is not Birkhoff-James orthogonal to A (min |T + lambda A| = " +
                                                std::to_string(v.min_norm) + ")");
  const MTDescription mt = norm_attainment_set(t, opts);
  WitnessReport r;
  const std::optional<std::size_t> dim = mt.span_dimension();
  if (mt.kind == MTKind::Empty)
  {
    r.exhaustive = mt.certified;
    r.note = "M_T is empty";
    return r;
  }

  const bool two_dim_sphere = mt.kind == MTKind::SubspaceSphere && dim && *dim == 2;
  std::vector<LpVector> samples = sample_attainment_set(mt, two_dim_sphere ? kAngleGrid : 1024, opts.seed);
  std::vector<double> margin(samples.size()), tx(samples.size());
  const auto count = static_cast<long>(samples.size());
  auto eval = [&](long i)
  {
    const auto k = static_cast<std::size_t>(i);
    margin[k] = pointwise_margin(t, a, samples[k]);
    tx[k] = bjlab::apply(t, fit(t, samples[k])).norm();
  };
  if (opts.execution == Execution::Parallel)
  {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) eval(i);
  }
  else
  {
    for (long i = 0; i < count; ++i) eval(i);
  }

  std::size_t bi = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (margin[i] < margin[bi]) bi = i;
  r.samples_examined = samples.size();
  r.inner_residual = margin[bi];
  r.witness = samples[bi];
  std::ostringstream note;
  if (two_dim_sphere)
  {
    // Refine the angle around the best grid point.
    const std::vector<LpVector> basis = basis_of(mt.points, mt.coord_indices, mt.p, 2);
    auto x_at = [&](double th) { return combine(basis, {std::cos(th), std::sin(th)}, mt.p); };
    const double h = std::numbers::pi / static_cast<double>(kAngleGrid);
    const double c = bi < 2 ? (bi == 0 ? 0.0 : 0.5 * std::numbers::pi) : h * static_cast<double>(bi - 1);
    const GoldenResult g =
      golden_section_minimize([&](double th) { return pointwise_margin(t, a, x_at(th)); }, c - h, c + h, kRefineWidth);
    r.samples_examined += static_cast<std::size_t>(g.evaluations);
    if (g.value < r.inner_residual)
    {
      r.inner_residual = g.value;
      r.witness = x_at(g.argmin);
      tx[bi] = bjlab::apply(t, fit(t, *r.witness)).norm();
    }
    note << "angle grid " << kAngleGrid << " refined to " << kRefineWidth;
  }
  else
  {
    note << samples.size() << " samples of M_T";
  }
  r.found = r.inner_residual <= tol * tx[bi];
  r.exhaustive = mt.certified && !mt.infinite && dim && *dim <= 2 && mt.kind != MTKind::HeadTailProduct;
  if (!r.found && !r.exhaustive) note << "; negative answer is evidence only";
  if (!r.found) note << "; smallest margin " << r.inner_residual;
  r.note = note.str();
  return r;
}

}  // namespace bjlab
