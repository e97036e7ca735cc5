// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bjlab/error.hpp"

namespace bjlab
{

std::string_view to_string(NormMethod m)
{
  switch (m)
  {
  case NormMethod::ExactSpectral: return "exact-spectral";
  case NormMethod::AnalyticStructured: return "analytic-structured";
  case NormMethod::PowerIteration: return "power-iteration";
  case NormMethod::GridOracle: return "grid-oracle";
  }
  return "?";
}

std::string_view to_string(MTKind k)
{
  switch (k)
  {
  case MTKind::Empty: return "empty";
  case MTKind::FinitePointPairs: return "finite-point-pairs";
  case MTKind::SubspaceSphere: return "subspace-sphere";
  case MTKind::HeadTailProduct: return "head-tail-product";
  }
  return "?";
}

namespace
{

constexpr std::size_t kInfinitePrefix = 64;

LpVector to_lp(const Eigen::VectorXd &v, double p, std::size_t length = 0)
{
  std::vector<double> c(v.data(), v.data() + v.size());
  if (c.size() < length) c.resize(length, 0.0);
  return LpVector(std::move(c), p);
}

bool is_diagonal(const Eigen::MatrixXd &m)
{
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0.0) return false;
  return true;
}

// Top level of a dense operator together with what spans it.
struct TopLevel
{
  double value = 0.0;
  double residual = 0.0;
  bool converged = true;
  bool certified = true;
  bool borderline = false;
  NormMethod method = NormMethod::AnalyticStructured;
  std::vector<std::size_t> coords;      // 1-based, for diagonal heads
  std::vector<Eigen::VectorXd> basis;   // orthonormal basis (p = q = 2)
  std::vector<Eigen::VectorXd> reps;    // cluster representatives otherwise
};

TopLevel top_level(const DenseOp &op, const NormOptions &opts)
{
  const Eigen::MatrixXd &A = op.matrix;
  TopLevel t;
  const Eigen::Index n = A.cols();
  if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0)
  {
    for (Eigen::Index i = 0; i < n; ++i) t.coords.push_back(static_cast<std::size_t>(i + 1));
    return t;
  }
  if (opts.diagonal_shortcut && op.p == op.q && is_diagonal(A))
  {
    const Eigen::Index k = std::min(A.rows(), A.cols());
    for (Eigen::Index i = 0; i < k; ++i) t.value = std::max(t.value, std::abs(A(i, i)));
    for (Eigen::Index i = 0; i < k; ++i)
    {
      const double gap = t.value - std::abs(A(i, i));
      if (gap <= opts.merge_tol * t.value)
        t.coords.push_back(static_cast<std::size_t>(i + 1));
      else if (gap < opts.gap_threshold * t.value)
        t.borderline = true;
    }
    t.certified = !t.borderline;
    return t;
  }
  if (op.p == 2.0 && op.q == 2.0)
  {
    const SvdResult s = jacobi_svd(A);
    const SpectralLevels lv = spectral_levels(s.singular_values, opts.gap_threshold, opts.merge_tol);
    t.value = lv.top;
    t.method = NormMethod::ExactSpectral;
    t.residual = s.off_orthogonality * lv.top;
    t.borderline = lv.borderline;
    t.certified = !lv.borderline;
    for (std::size_t i = 0; i < lv.multiplicity; ++i) t.basis.push_back(s.right_vectors.col(static_cast<Eigen::Index>(i)));
    return t;
  }

  const std::vector<StartResult> runs = multistart_power(op, opts);
  std::size_t bi = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value > runs[bi].value) bi = i;
  t.value = runs[bi].value;
  t.method = NormMethod::PowerIteration;
  t.certified = false;
  t.converged = runs[bi].converged;
  t.residual = runs[bi].converged ? 0.0 : runs[bi].last_step;
  // Spread among the starts that reach the top.
  const double accept = 1e-7 * std::max(1.0, t.value);
  for (const StartResult &r : runs)
    if (t.value - r.value <= 1e-6 * t.value) t.residual = std::max(t.residual, t.value - r.value);

  // Cluster the top limits modulo sign; the best run of each cluster is its representative.
  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return runs[a].value > runs[b].value; });
  for (std::size_t i : order)
  {
    if (t.value - runs[i].value > accept) break;
    const LpVector &x = runs[i].x;
    bool fresh = true;
    for (const Eigen::VectorXd &c : t.reps)
    {
      const LpVector cv = to_lp(c, op.p);
      const double d = std::min(x.axpy(-1.0, cv).norm(), x.axpy(1.0, cv).norm());
      if (d <= opts.cluster_radius)
      {
        fresh = false;
        break;
      }
    }
    if (fresh) t.reps.push_back(Eigen::Map<const Eigen::VectorXd>(x.coords().data(), static_cast<Eigen::Index>(x.size())));
  }
  return t;
}

double riesz_thorin_bound(const Eigen::MatrixXd &h, double p)
{
  const double c1 = h.cwiseAbs().colwise().sum().maxCoeff();
  const double ci = h.cwiseAbs().rowwise().sum().maxCoeff();
  return std::pow(c1, 1.0 / p) * std::pow(ci, 1.0 - 1.0 / p);
}

// First `count` local indices where |tail| reaches `sup`.
std::vector<std::size_t> tail_indices(const Diagonal &tail, const TailSup &ts, std::size_t count)
{
  if (auto s = tail.as_sequence()) return s->attaining_indices(count);
  if (ts.attainment == Attainment::AttainedFinitely)
  {
    std::vector<std::size_t> v = ts.indices;
    if (v.size() > count) v.resize(count);
    return v;
  }
  std::vector<std::size_t> v;
  for (std::size_t n = 1; v.size() < count && n < (std::size_t{1} << 22); ++n)
    if (ties(std::abs(tail(n)), ts.sup_abs)) v.push_back(n);
  return v;
}

}  // namespace

NormCertificate op_norm_dense(const DenseOp &op, const NormOptions &opts)
{
  if (op.matrix.size() == 0) throw Error(ErrorCode::DegenerateInput, "empty matrix");
  const TopLevel t = top_level(op, opts);
  NormCertificate c;
  c.value = t.value;
  c.method = t.method;
  c.residual = t.residual;
  c.converged = t.converged;
  const auto n = static_cast<std::size_t>(op.matrix.cols());
  if (!t.coords.empty())
    c.maximizer = LpVector::unit(t.coords.front(), n, op.p);
  else if (!t.basis.empty())
    c.maximizer = to_lp(t.basis.front(), op.p);
  else if (!t.reps.empty())
    c.maximizer = to_lp(t.reps.front(), op.p);
  return c;
}

NormCertificate op_norm_structured(const StructuredOp &op, const NormOptions &opts)
{
  const std::size_t m = op.head_size();
  const TailSup ts = op.tail.sup_analysis();
  NormCertificate c;
  c.method = NormMethod::AnalyticStructured;
  std::optional<NormCertificate> head;
  if (m > 0) head = op_norm_dense(DenseOp{op.head, op.p, op.p}, opts);

  const double hv = head ? head->value : 0.0;
  c.value = std::max(hv, ts.sup_abs);
  c.residual = std::max(head ? head->residual : 0.0, ts.residual);
  c.converged = head ? head->converged : true;
  if (head && head->method == NormMethod::PowerIteration) c.method = NormMethod::PowerIteration;

  const bool tail_wins = !head || ts.sup_abs > hv;
  if (!tail_wins)
  {
    c.maximizer = head->maximizer->padded(m);
    return c;
  }
  if (ts.certified && ts.attainment != Attainment::NotAttained)
  {
    const auto idx = tail_indices(op.tail, ts, 1);
    if (!idx.empty()) c.maximizer = LpVector::unit(m + idx.front(), m + idx.front(), op.p);
  }
  else if (head && ties(hv, ts.sup_abs))
  {
    c.maximizer = head->maximizer->padded(m);
  }
  return c;
}

NormCertificate op_norm(const OperatorRep &op, const NormOptions &opts)
{
  const Canonical c = canonical(op);
  if (const auto *d = std::get_if<DenseOp>(&c)) return op_norm_dense(*d, opts);
  return op_norm_structured(std::get<StructuredOp>(c), opts);
}

std::pair<double, double> op_norm_value(const Canonical &op, const NormOptions &opts)
{
  if (const auto *d = std::get_if<DenseOp>(&op))
  {
    const NormCertificate c = op_norm_dense(*d, opts);
    return {c.value, c.residual};
  }
  const auto &s = std::get<StructuredOp>(op);
  const TailSup ts = s.tail.sup_analysis();
  if (s.head_size() == 0 || riesz_thorin_bound(s.head, s.p) <= ts.sup_abs) return {ts.sup_abs, ts.residual};
  const NormCertificate h = op_norm_dense(DenseOp{s.head, s.p, s.p}, opts);
  return {std::max(h.value, ts.sup_abs), std::max(h.residual, ts.residual)};
}

EssentialNormReport essential_norm(const StructuredOp &op)
{
  EssentialNormReport r;
  const Diagonal &tail = op.tail;
  const std::size_t L = tail.period();
  WeaklyNullSequence w;
  w.offset = op.head_size();
  w.period = L;
  for (std::size_t k = 0; k < L; ++k)
    if (std::abs(tail.limit(k)) > std::abs(tail.limit(w.residue))) w.residue = k;
  w.limit_abs = std::abs(tail.limit(w.residue));
  r.value = w.limit_abs;

  constexpr double eps = 1e-10;
  if (auto s = tail.as_sequence())
  {
    const double n = s->settle_index(eps).value_or(std::numeric_limits<double>::infinity());
    // Align to the chosen residue class.
    const double base = std::isfinite(n) ? n + std::fmod(static_cast<double>(w.residue) + 1.0 - std::fmod(n, static_cast<double>(L)) + static_cast<double>(L), static_cast<double>(L)) : n;
    w.sample_index = base;
    w.lower_bound = std::isfinite(base) ? std::max(0.0, w.limit_abs - s->deviation_bound(base)) : 0.0;
  }
  else
  {
    std::size_t n0 = std::max<std::size_t>(tail.settled_from(), 1);
    double lb = 0.0;
    for (int round = 0; round < 40; ++round)
    {
      n0 += (w.residue + 1 + L - n0 % L) % L;
      const Interval iv = tail.class_range(n0, L);
      lb = (iv.lo > 0.0 || iv.hi < 0.0) ? std::min(std::abs(iv.lo), std::abs(iv.hi)) : 0.0;
      if (lb >= w.limit_abs - eps || n0 > (std::size_t{1} << 50)) break;
      n0 *= 2;
    }
    w.sample_index = static_cast<double>(n0);
    w.lower_bound = lb;
  }
  r.certificate = w;
  return r;
}

EssentialNormReport essential_norm(const OperatorRep &op)
{
  const Canonical c = canonical(op);
  if (const auto *s = std::get_if<StructuredOp>(&c)) return essential_norm(*s);
  return EssentialNormReport{};
}

std::optional<WeaklyNullSequence> weakly_null_norming_check(const StructuredOp &op, const NormOptions &opts)
{
  const EssentialNormReport e = essential_norm(op);
  const double norm = op_norm_value(Canonical{op}, opts).first;
  if (norm == 0.0 || !ties(e.value, norm)) return std::nullopt;
  return e.certificate;
}

std::optional<std::size_t> MTDescription::span_dimension() const
{
  if (infinite) return std::nullopt;
  switch (kind)
  {
  case MTKind::Empty: return 0;
  case MTKind::FinitePointPairs: return points.size();
  default: return points.size() + coord_indices.size();
  }
}

namespace
{

MTDescription from_top(const TopLevel &t, double p, std::size_t dim)
{
  MTDescription d;
  d.p = p;
  d.certified = t.certified;
  if (!t.coords.empty())
  {
    if (t.coords.size() == 1)
    {
      d.kind = MTKind::FinitePointPairs;
      d.points.push_back(LpVector::unit(t.coords[0], dim, p));
    }
    else
    {
      d.kind = MTKind::SubspaceSphere;
      d.coord_indices = t.coords;
    }
    return d;
  }
  if (!t.basis.empty())
  {
    d.kind = t.basis.size() == 1 ? MTKind::FinitePointPairs : MTKind::SubspaceSphere;
    for (const auto &b : t.basis) d.points.push_back(to_lp(b, p, dim));
    return d;
  }
  d.kind = MTKind::FinitePointPairs;
  for (const auto &r : t.reps) d.points.push_back(to_lp(r, p, dim));
  return d;
}

MTDescription structured_mt(const StructuredOp &op, const NormOptions &opts)
{
  const std::size_t m = op.head_size();
  const TailSup ts = op.tail.sup_analysis();
  TopLevel head;
  if (m > 0) head = top_level(DenseOp{op.head, op.p, op.p}, opts);

  MTDescription d;
  d.p = op.p;
  d.certified = ts.certified && head.certified;
  const double scale = std::max(head.value, ts.sup_abs);
  if (scale == 0.0)
  {
    // T = 0: every unit vector is norming.
    d.kind = MTKind::SubspaceSphere;
    d.infinite = true;
    d.compact = false;
    for (std::size_t i = 1; i <= kInfinitePrefix; ++i) d.coord_indices.push_back(i);
    return d;
  }
  const double diff = head.value - ts.sup_abs;
  const double tie_tol = (head.method == NormMethod::PowerIteration ? opts.gap_threshold : opts.merge_tol) * scale;
  if (std::abs(diff) > tie_tol && std::abs(diff) < opts.gap_threshold * scale) d.certified = false;
  const bool head_in = m > 0 && diff >= -tie_tol;
  const bool tail_in = diff <= tie_tol && ts.attainment != Attainment::NotAttained;
  if (!ts.attainment_known && diff <= tie_tol) d.certified = false;

  std::vector<std::size_t> tail_coords;
  if (tail_in)
  {
    for (std::size_t k : tail_indices(op.tail, ts, kInfinitePrefix)) tail_coords.push_back(m + k);
    d.infinite = ts.attainment == Attainment::AttainedInfinitely;
    d.compact = !d.infinite;
  }

  if (!head_in && !tail_in)
  {
    d.kind = MTKind::Empty;
    return d;
  }
  if (!head_in || !head.coords.empty())
  {
    // Everything is spanned by coordinate vectors.
    std::vector<std::size_t> all = head_in ? head.coords : std::vector<std::size_t>{};
    all.insert(all.end(), tail_coords.begin(), tail_coords.end());
    if (all.size() == 1 && !d.infinite)
    {
      d.kind = MTKind::FinitePointPairs;
      d.points.push_back(LpVector::unit(all[0], all[0], op.p));
    }
    else
    {
      d.kind = MTKind::SubspaceSphere;
      d.coord_indices = std::move(all);
    }
    return d;
  }
  MTDescription h = from_top(head, op.p, m);
  if (!tail_in)
  {
    h.certified = d.certified;
    return h;
  }
  d.kind = MTKind::HeadTailProduct;
  d.points = std::move(h.points);
  d.head_is_subspace = !head.basis.empty();
  d.coord_indices = std::move(tail_coords);
  return d;
}

}  // namespace

MTDescription norm_attainment_set(const OperatorRep &op, const NormOptions &opts)
{
  const Canonical c = canonical(op);
  if (const auto *s = std::get_if<StructuredOp>(&c)) return structured_mt(*s, opts);
  const auto &dense = std::get<DenseOp>(c);
  if (dense.matrix.size() == 0) throw Error(ErrorCode::DegenerateInput, "empty matrix");
  return from_top(top_level(dense, opts), dense.p, static_cast<std::size_t>(dense.matrix.cols()));
}

}  // namespace bjlab
