// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/bsemrl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bjlab/error.hpp"
#include "bjlab/golden.hpp"
#include "bjlab/spectral.hpp"

namespace bjlab
{

std::string_view to_string(Verdict v)
{
  switch (v)
  {
  case Verdict::True: return "True";
  case Verdict::False: return "False";
  case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(Justification j)
{
  switch (j)
  {
  case Justification::HilbertCharacterization: return "HilbertCharacterization";
  case Justification::DiagonalCriterion: return "DiagonalCriterion";
  case Justification::EssentialNormObstruction: return "EssentialNormObstruction";
  case Justification::MPRSSufficient: return "MPRSSufficient";
  case Justification::EmptyMT: return "EmptyMT";
  case Justification::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace
{

constexpr double kGridTol = 1e-8;
constexpr std::size_t kSampleSupport = 8;

const char *kMIdeal = "K(l_p) is an M-ideal in B(l_p) (background fact)";
const char *kMpSpace = "l_p is an M_p-space (background fact)";
const char *kSsd = "strong subdifferentiability leg implied by background results, not measured";

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

LpVector from_eigen(const Eigen::VectorXd &v, double p, std::size_t length)
{
  std::vector<double> c(v.data(), v.data() + v.size());
  if (c.size() < length) c.resize(length, 0.0);
  return LpVector(std::move(c), p);
}

// Tail with the listed local indices zeroed.
Diagonal drop_indices(const Diagonal &tail, const std::vector<std::size_t> &local)
{
  if (local.empty()) return tail;
  std::vector<std::pair<std::size_t, double>> ov;
  for (std::size_t k : local) ov.emplace_back(k, 0.0);
  return tail.times(Factor{SequenceSpec(Constant{1.0}, std::move(ov)), 0, {}});
}

void reject_zero(double norm)
{
  if (norm == 0.0) throw Error(ErrorCode::DegenerateInput, "T = 0 has no meaningful decision");
}

BSDecision hilbert_dense(const DenseOp &d, const NormOptions &opts)
{
  BSDecision r;
  const SvdResult s = jacobi_svd(d.matrix);
  const SpectralLevels lv = spectral_levels(s.singular_values, opts.gap_threshold, opts.merge_tol);
  reject_zero(lv.top);
  r.norm = lv.top;
  r.essential_norm = 0.0;
  r.restricted_norm = lv.next;
  r.mt = norm_attainment_set(OperatorRep{d}, opts);
  if (lv.borderline)
  {
    r.diagnostics.push_back("a singular value lies inside the gap band below the top level");
    return r;
  }
  const auto n = static_cast<std::size_t>(d.matrix.cols());
  for (std::size_t i = 0; i < lv.multiplicity; ++i)
    r.h0_basis.push_back(from_eigen(s.right_vectors.col(static_cast<Eigen::Index>(i)), 2.0, n));
  r.verdict = Verdict::True;
  r.justification = Justification::HilbertCharacterization;
  return r;
}

BSDecision hilbert_structured(const StructuredOp &t, const NormOptions &opts)
{
  BSDecision r;
  const std::size_t m = t.head_size();
  SpectralLevels lv;
  SvdResult svd;
  if (m > 0)
  {
    svd = jacobi_svd(t.head);
    lv = spectral_levels(svd.singular_values, opts.gap_threshold, opts.merge_tol);
  }
  const TailSup ts = t.tail.sup_analysis();
  r.norm = std::max(lv.top, ts.sup_abs);
  reject_zero(r.norm);
  r.essential_norm = essential_norm(t).value;
  r.mt = norm_attainment_set(OperatorRep{t}, opts);
  r.assumptions.push_back(kSsd);

  if (!ts.certified || !ts.attainment_known)
  {
    r.diagnostics.push_back("tail supremum is not certified");
    return r;
  }
  const double merge = opts.merge_tol * r.norm, gap = opts.gap_threshold * r.norm;
  const double diff = lv.top - ts.sup_abs;
  if (m > 0 && std::abs(diff) > merge && std::abs(diff) < gap)
  {
    r.diagnostics.push_back("head and tail levels are within the gap threshold");
    return r;
  }
  const bool head_in = m > 0 && diff >= -merge;
  const bool tail_in = diff <= merge && ts.attainment != Attainment::NotAttained;
  if (head_in && lv.borderline)
  {
    r.diagnostics.push_back("head spectral gap below threshold");
    return r;
  }
  if (!head_in && !tail_in)
  {
    r.restricted_norm = r.norm;
    r.verdict = Verdict::False;
    r.justification = Justification::EmptyMT;
    r.diagnostics.push_back("|T| is not attained");
    return r;
  }
  if (tail_in && ts.attainment == Attainment::AttainedInfinitely)
  {
    r.restricted_norm = r.norm;
    r.verdict = Verdict::False;
    r.justification = Justification::HilbertCharacterization;
    r.diagnostics.push_back("M_T is the sphere of an infinite dimensional subspace");
    return r;
  }

  std::vector<std::size_t> f;
  if (tail_in) f = ts.indices;
  const double head_rest = m == 0 ? 0.0 : (head_in ? lv.next : lv.top);
  const TailSup rest = drop_indices(t.tail, f).sup_analysis();
  if (!rest.certified)
  {
    r.diagnostics.push_back("restricted tail supremum is not certified");
    return r;
  }
  const double restricted = std::max(head_rest, rest.sup_abs);
  r.restricted_norm = restricted;
  if (head_in)
    for (std::size_t i = 0; i < lv.multiplicity; ++i)
      r.h0_basis.push_back(from_eigen(svd.right_vectors.col(static_cast<Eigen::Index>(i)), 2.0, m));
  for (std::size_t k : f) r.h0_basis.push_back(LpVector::unit(m + k, m + k, 2.0));

  if (r.norm - restricted <= merge)
  {
    r.verdict = Verdict::False;
    r.justification = Justification::HilbertCharacterization;
    r.diagnostics.push_back("restricted norm equals |T|");
  }
  else if (r.norm - restricted < gap)
  {
    r.diagnostics.push_back("restricted norm within the gap threshold of |T|");
  }
  else
  {
    r.verdict = Verdict::True;
    r.justification = Justification::HilbertCharacterization;
  }
  return r;
}

bool connected_certified(const MTDescription &mt)
{
  if (!mt.certified || mt.infinite) return false;
  switch (mt.kind)
  {
  case MTKind::SubspaceSphere: return true;
  case MTKind::FinitePointPairs: return mt.points.size() == 1;
  case MTKind::HeadTailProduct: return mt.head_is_subspace && mt.p == 2.0;
  default: return false;
  }
}

}  // namespace

BSDecision bs_decide_hilbert(const OperatorRep &t, const NormOptions &opts)
{
  const Canonical c = canonical(t);
  if (const auto *d = std::get_if<DenseOp>(&c))
  {
    if (d->p != 2.0 || d->q != 2.0) throw Error(ErrorCode::UnsupportedExponent, "Hilbert decision needs p = q = 2");
    if (d->matrix.size() == 0) throw Error(ErrorCode::DegenerateInput, "empty matrix");
    return hilbert_dense(*d, opts);
  }
  const auto &s = std::get<StructuredOp>(c);
  if (s.p != 2.0) throw Error(ErrorCode::UnsupportedExponent, "Hilbert decision needs p = 2");
  return hilbert_structured(s, opts);
}

BSDecision bs_decide_lp(const StructuredOp &t, const NormOptions &opts)
{
  if (!(t.p > 1.0) || !std::isfinite(t.p))
    throw Error(ErrorCode::UnsupportedExponent, "l_p decision needs 1 < p < inf");
  BSDecision r;
  const TailSup ts = t.tail.sup_analysis();
  r.essential_norm = essential_norm(t).value;

  if (t.head_is_diagonal())
  {
    double head_max = 0.0;
    for (Eigen::Index i = 0; i < t.head.rows(); ++i) head_max = std::max(head_max, std::abs(t.head(i, i)));
    r.norm = std::max(head_max, ts.sup_abs);
    reject_zero(r.norm);
    r.mt = norm_attainment_set(OperatorRep{t}, opts);
    if (!ts.certified || !ts.attainment_known)
    {
      r.diagnostics.push_back("tail supremum is not certified");
      return r;
    }
    // Predicate on the normalized diagonal k / |T|.
    const bool head_attains = t.head_size() > 0 && ties(head_max, r.norm);
    const bool tail_attains = ties(ts.sup_abs, r.norm) && ts.attainment != Attainment::NotAttained;
    const bool infinitely = tail_attains && ts.attainment == Attainment::AttainedInfinitely;
    const bool finite = (head_attains || tail_attains) && !infinitely;
    const bool gap = !ties(r.essential_norm / r.norm, 1.0);
    if (finite && gap)
    {
      r.verdict = Verdict::True;
      r.justification = Justification::DiagonalCriterion;
      for (std::size_t i = 1; i <= t.head_size(); ++i)
        if (ties(std::abs(t.head(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i - 1))), r.norm))
          r.h0_basis.push_back(LpVector::unit(i, i, t.p));
      if (tail_attains)
        for (std::size_t k : ts.indices) r.h0_basis.push_back(LpVector::unit(t.head_size() + k, t.head_size() + k, t.p));
      return r;
    }
    r.verdict = Verdict::False;
    r.justification = gap ? Justification::DiagonalCriterion : Justification::EssentialNormObstruction;
    if (!head_attains && !tail_attains) r.diagnostics.push_back("M_T is empty");
    if (infinitely) r.diagnostics.push_back("supremum attained at infinitely many indices");
    return r;
  }

  const NormCertificate nc = op_norm_structured(t, opts);
  r.norm = nc.value;
  reject_zero(r.norm);
  const double tie_tol = (nc.method == NormMethod::PowerIteration ? opts.gap_threshold : opts.merge_tol) * r.norm;
  const double diff = r.norm - r.essential_norm;
  if (diff <= tie_tol)
  {
    r.verdict = Verdict::False;
    r.justification = Justification::EssentialNormObstruction;
    r.mt = norm_attainment_set(OperatorRep{t}, opts);
    return r;
  }
  if (diff < opts.gap_threshold * r.norm)
  {
    r.diagnostics.push_back("|T|_e within the gap threshold of |T|");
    return r;
  }
  r.mt = norm_attainment_set(OperatorRep{t}, opts);
  if (connected_certified(r.mt))
  {
    r.verdict = Verdict::True;
    r.justification = Justification::MPRSSufficient;
    r.assumptions = {kMIdeal, kMpSpace};
    r.h0_basis = r.mt.points;
    for (std::size_t i : r.mt.coord_indices) r.h0_basis.push_back(LpVector::unit(i, i, t.p));
    return r;
  }
  r.diagnostics.push_back(r.mt.certified ? "M_T is not a subspace sphere or antipodal pair"
                                         : "M_T known only through uncertified numeric clusters");
  return r;
}

BSDecision bs_decide(const OperatorRep &t, const NormOptions &opts)
{
  const Canonical c = canonical(t);
  if (const auto *d = std::get_if<DenseOp>(&c))
  {
    if (d->p == 2.0 && d->q == 2.0) return bs_decide_hilbert(t, opts);
    throw Error(ErrorCode::UnsupportedCombination, "no decision procedure for dense operators off l_2");
  }
  const auto &s = std::get<StructuredOp>(c);
  if (s.p == 2.0) return bs_decide_hilbert(t, opts);
  return bs_decide_lp(s, opts);
}

// ---------------------------------------------------------------------------
// Coordinate projections

namespace
{

// Indices past which two 0/1 masks repeat.
std::size_t scan_bound(const CoordProjection &p)
{
  if (p.ambient) return *p.ambient;
  if (const auto *f = std::get_if<FiniteMask>(&p.mask)) return f->indices.empty() ? 0 : *f->indices.rbegin();
  const SequenceSpec &s = std::get<SequenceSpec>(p.mask);
  return s.last_override() + 2 * s.period() + 2;
}

std::size_t joint_bound(const CoordProjection &p, const CoordProjection &q)
{
  if (p.ambient) return *p.ambient;
  const std::size_t lp = std::get_if<SequenceSpec>(&p.mask) ? std::get<SequenceSpec>(p.mask).period() : 1;
  const std::size_t lq = std::get_if<SequenceSpec>(&q.mask) ? std::get<SequenceSpec>(q.mask).period() : 1;
  return std::max(scan_bound(p), scan_bound(q)) + 2 * std::lcm(lp, lq);
}

OperatorRep identity_like(const CoordProjection &p)
{
  if (p.ambient)
    return DenseOp{Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(*p.ambient), static_cast<Eigen::Index>(*p.ambient)), p.p, p.p};
  return StructuredOp{Eigen::MatrixXd(0, 0), Diagonal(SequenceSpec::constant(1.0)), p.p};
}

}  // namespace

bool is_trivial_projection(const CoordProjection &p)
{
  const std::size_t bound = scan_bound(p);
  bool any = false, all = true;
  for (std::size_t i = 1; i <= bound; ++i)
  {
    const bool in = p.contains(i);
    any = any || in;
    all = all && in;
  }
  if (!any) return true;
  if (p.ambient) return all;
  return all && std::holds_alternative<SequenceSpec>(p.mask);
}

ProjectionOrthogonality lp_projection_orthogonality(const CoordProjection &p, const CoordProjection &q, double tol,
                                                    const NormOptions &opts)
{
  if (p.p != q.p) throw Error(ErrorCode::InvalidPair, "projections act on different l_p");
  if (p.ambient != q.ambient) throw Error(ErrorCode::InvalidPair, "projections act on different spaces");
  if (is_trivial_projection(p) || is_trivial_projection(q))
    throw Error(ErrorCode::InvalidPair, "both projections must be nontrivial");
  const std::size_t bound = joint_bound(p, q);
  std::optional<std::size_t> diff;
  bool equal = true;
  for (std::size_t i = 1; i <= bound; ++i)
  {
    const bool a = p.contains(i), b = q.contains(i);
    if (a != b) equal = false;
    if (a && !b && !diff) diff = i;
  }
  if (equal) throw Error(ErrorCode::InvalidPair, "P = Q");

  ProjectionOrthogonality r;
  r.orthogonal = diff.has_value();
  r.verdict = bj_orthogonal_op(OperatorRep{p}, OperatorRep{q}, tol, opts);
  r.numeric_orthogonal = r.verdict.orthogonal;
  if (diff)
  {
    const std::size_t len = p.ambient ? *p.ambient : *diff;
    const LpVector e = LpVector::unit(*diff, len, p.p);
    const LpVector pe = bjlab::apply(OperatorRep{p}, e), qe = bjlab::apply(OperatorRep{q}, e);
    r.witness = e;
    r.witness_in_mp = std::abs(pe.norm() - 1.0) <= 1e-15;
    // Q e_i = 0 here, and every vector is orthogonal to 0.
    r.witness_pointwise = qe.is_zero() || bj_orthogonal_vec(pe, qe, tol);
  }
  else
  {
    r.half_q_bound = op_norm_value(linear_combination(OperatorRep{p}, 1.0, OperatorRep{q}, -0.5), opts).first;
  }
  return r;
}

double half_identity_bound(const CoordProjection &p, const NormOptions &opts)
{
  if (is_trivial_projection(p)) throw Error(ErrorCode::InvalidProjection, "P is 0 or the identity");
  return op_norm_value(linear_combination(OperatorRep{p}, 1.0, identity_like(p), -0.5), opts).first;
}

double distance_to_range_sphere(double t, double p)
{
  t = std::clamp(t, 0.0, 1.0);
  return std::pow(std::max(0.0, std::pow(1.0 - t, p) + 1.0 - std::pow(t, p)), 1.0 / p);
}

namespace
{

// Largest t in [0, 1] with distance_to_range_sphere(t) >= delta (the distance decreases in t).
double separation_sup(double delta, double p)
{
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    (distance_to_range_sphere(mid, p) >= delta ? lo : hi) = mid;
  }
  return lo;
}

LpVector random_unit(std::mt19937_64 &gen, std::size_t n, double p)
{
  std::normal_distribution<double> g;
  std::vector<double> c(n);
  for (;;)
  {
    for (double &v : c) v = g(gen);
    LpVector x(c, p);
    if (!x.is_zero()) return x.normalized();
  }
}

}  // namespace

FiniteProjectionReport finite_rank_lp_projection_bs(const CoordProjection &p, std::uint64_t seed, const NormOptions &opts)
{
  if (p.infinite_rank())
    throw Error(ErrorCode::PreconditionFailed, "infinite mask; use infinite_projection_bs_failure");
  const std::vector<std::size_t> mask = p.masked_indices(SIZE_MAX);
  if (mask.empty()) throw Error(ErrorCode::InvalidProjection, "P = 0");
  const std::size_t n = p.ambient ? *p.ambient : mask.back() + 2;
  const CoordProjection pn{p.mask, p.p, n};

  FiniteProjectionReport r;
  r.trivial = mask.size() == n;
  r.mt = norm_attainment_set(OperatorRep{pn}, opts);
  std::set<std::size_t> span(r.mt.coord_indices.begin(), r.mt.coord_indices.end());
  bool unit_points = true;
  for (const LpVector &x : r.mt.points)
  {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0) ++nz, at = i + 1;
    unit_points = unit_points && nz == 1;
    span.insert(at);
  }
  r.mt_matches_range = r.mt.certified && unit_points && span == std::set<std::size_t>(mask.begin(), mask.end());

  std::vector<LpVector> xs;
  if (!r.trivial)
  {
    std::mt19937_64 gen(seed);
    for (int i = 0; i < 4000; ++i) xs.push_back(random_unit(gen, n, p.p));
    std::vector<std::size_t> off;
    for (std::size_t j = 1; j <= n; ++j)
      if (!pn.contains(j)) off.push_back(j);
    // Two-coordinate arcs e_i -> e_j cross every distance level.
    for (std::size_t i : mask)
      for (std::size_t j : off)
        for (int k = 0; k <= 400; ++k)
        {
          const double a = k / 400.0;
          std::vector<double> c(n, 0.0);
          c[i - 1] = a;
          c[j - 1] = std::pow(1.0 - std::pow(a, p.p), 1.0 / p.p);
          xs.emplace_back(std::move(c), p.p);
        }
  }
  r.ok = r.mt_matches_range;
  for (double delta : {0.1, 0.3, 0.5})
  {
    SeparationRow row{delta, 0.0, separation_sup(delta, p.p), 0};
    for (const LpVector &x : xs)
    {
      const double t = bjlab::apply(OperatorRep{pn}, x).norm();
      if (distance_to_range_sphere(t, p.p) < delta) continue;
      ++row.samples;
      row.measured_sup = std::max(row.measured_sup, t);
    }
    r.ok = r.ok && row.analytic_sup < 1.0 && row.measured_sup <= row.analytic_sup + 1e-12;
    r.separation.push_back(row);
  }
  return r;
}

// ---------------------------------------------------------------------------
// No-witness constructions

std::pair<double, double> lambda_grid_min(const OperatorRep &t, const OperatorRep &a, const LambdaGrid &grid,
                                          const NormOptions &opts)
{
  const auto count = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 0.5)) + 1;
  std::vector<double> values(static_cast<std::size_t>(count));
  NormOptions inner = opts;
  inner.execution = Execution::Serial;
  const Canonical ct = canonical(t), ca = canonical(a);
  const OperatorRep tr = to_rep(ct), ar = to_rep(ca);
  const bool parallel = opts.execution == Execution::Parallel;
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long k = 0; k < count; ++k)
  {
    const double lambda = grid.lo + static_cast<double>(k) * grid.step;
    values[static_cast<std::size_t>(k)] = op_norm_value(linear_combination(tr, 1.0, ar, lambda), inner).first;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] < values[best]) best = k;
  return {values[best], grid.lo + static_cast<double>(best) * grid.step};
}

namespace
{

// Unit vectors supported on the listed coordinates: each coordinate alone,
// then random combinations.
std::vector<LpVector> supported_samples(const std::vector<std::size_t> &support, double p, std::size_t count,
                                        std::uint64_t seed)
{
  std::vector<LpVector> out;
  const std::size_t len = support.empty() ? 0 : support.back();
  for (std::size_t i : support)
  {
    if (out.size() >= count) break;
    out.push_back(LpVector::unit(i, len, p));
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<std::size_t> width(1, support.size());
  while (out.size() < count)
  {
    std::vector<double> c(len, 0.0);
    const std::size_t w = width(gen);
    for (std::size_t k = 0; k < w; ++k) c[support[k] - 1] = g(gen);
    LpVector x(std::move(c), p);
    if (!x.is_zero()) out.push_back(x.normalized());
  }
  return out;
}

struct PointCheck
{
  double margin;
  double ratio;
  bool witness;
};

PointCheck check_point(const LpVector &tx, const LpVector &ax, double tol)
{
  PointCheck c{0.0, 0.0, true};
  const double nt = tx.norm();
  if (ax.is_zero()) return c;
  const LambdaMin lm = bj_min_lambda(tx, ax);
  c.margin = std::max(0.0, nt - lm.min_value);
  c.ratio = tx.axpy(-1.0, ax).norm() / nt;
  c.witness = c.margin <= tol * nt;
  return c;
}

void absorb(ConstructionReport &r, const PointCheck &c)
{
  if (r.samples == 0 || c.margin < r.min_margin) r.min_margin = c.margin;
  r.max_ratio = std::max(r.max_ratio, c.ratio);
  if (c.witness) ++r.witnesses;
  ++r.samples;
}

void finish(ConstructionReport &r)
{
  r.ok = r.verdict.orthogonal && r.grid_min >= r.t_norm - kGridTol && r.witnesses == 0 &&
         (r.samples == 0 || (r.min_margin > 0.0 && r.max_ratio < 1.0)) && r.max_formula_gap <= 1e-10;
}

}  // namespace

ConstructionReport infinite_projection_bs_failure(const CoordProjection &p, std::size_t samples, std::uint64_t seed,
                                                  const NormOptions &opts, const LambdaGrid &grid)
{
  if (!p.infinite_rank()) throw Error(ErrorCode::PreconditionFailed, "projection has finite rank");
  const OperatorRep pr{p};
  const OperatorRep a = compose_diag_weights(pr, SequenceSpec::geometric(1.0, 0.5));
  ConstructionReport r;
  r.construction = "A = P diag(2^-k) over masked coordinates";
  r.p = p.p;
  r.t_norm = op_norm_value(canonical(pr), opts).first;
  r.verdict = bj_orthogonal_op(pr, a, kDefaultTol, opts);
  std::tie(r.grid_min, r.grid_argmin) = lambda_grid_min(pr, a, grid, opts);
  r.norm_at_minus_one = op_norm_value(linear_combination(pr, 1.0, a, -1.0), opts).first;

  const std::vector<std::size_t> support = p.masked_indices(kSampleSupport);
  for (const LpVector &f : supported_samples(support, p.p, samples, seed))
  {
    const LpVector tf = bjlab::apply(pr, f), af = bjlab::apply(a, f);
    absorb(r, check_point(tf, af, kDefaultTol));
    // |Pf - Af|^p = sum_k (1 - 2^-k)^p |f_{n_k}|^p.
    double formula = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
      formula += std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(k + 1)), p.p) * std::pow(std::abs(f.at(support[k] - 1)), p.p);
    const double measured = std::pow(tf.axpy(-1.0, af).norm(), p.p);
    r.max_formula_gap = std::max(r.max_formula_gap, std::abs(measured - formula));
  }
  r.ok = std::abs(r.norm_at_minus_one - 1.0) <= 1e-12;
  if (r.ok) finish(r);
  return r;
}

ConstructionReport essential_norm_bs_failure(const StructuredOp &t, std::size_t samples, std::uint64_t seed,
                                             const NormOptions &opts, const LambdaGrid &grid)
{
  const OperatorRep tr{t};
  ConstructionReport r;
  r.construction = "A = T diag(1/m^2)";
  r.p = t.p;
  r.t_norm = op_norm_value(Canonical{t}, opts).first;
  const double ess = essential_norm(t).value;
  if (r.t_norm == 0.0 || r.t_norm - ess > opts.gap_threshold * r.t_norm)
    throw Error(ErrorCode::PreconditionFailed, "construction needs |T|_e = |T| > 0");
  const OperatorRep a = compose_diag_weights(tr, SequenceSpec::power(0.0, 1.0, 2.0));
  r.verdict = bj_orthogonal_op(tr, a, kDefaultTol, opts);
  std::tie(r.grid_min, r.grid_argmin) = lambda_grid_min(tr, a, grid, opts);
  r.norm_at_minus_one = op_norm_value(linear_combination(tr, 1.0, a, -1.0), opts).first;

  const MTDescription mt = norm_attainment_set(tr, opts);
  std::vector<LpVector> xs = sample_attainment_set(mt, samples, seed);
  if (mt.kind == MTKind::FinitePointPairs)
    for (const LpVector &x : mt.points) xs.push_back(x.normalized().scaled(-1.0));
  for (const LpVector &x : xs)
  {
    const LpVector tx = bjlab::apply(tr, x), ax = bjlab::apply(a, x);
    absorb(r, check_point(tx, ax, kDefaultTol));
    // |Tx - Ax| = |T(I - W)x| <= |T| (sum (1 - 1/m^2)^p |x_m|^p)^(1/p).
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      const double m = static_cast<double>(i + 1);
      s += std::pow(1.0 - 1.0 / (m * m), t.p) * std::pow(std::abs(x[i]), t.p);
    }
    const double bound = r.t_norm * std::pow(s, 1.0 / t.p);
    r.max_formula_gap = std::max(r.max_formula_gap, tx.axpy(-1.0, ax).norm() - bound);
  }
  finish(r);
  return r;
}

std::size_t SignedPermutation::image(std::size_t i) const
{
  const std::size_t m = head_perm.size();
  return i <= m ? head_perm[i - 1] : i + offset;
}

double SignedPermutation::sign(std::size_t i) const
{
  return signs[(i - 1) % signs.size()];
}

LpVector SignedPermutation::apply(const LpVector &x) const
{
  std::size_t len = 0;
  for (std::size_t i = 1; i <= x.size(); ++i)
    if (x[i - 1] != 0.0) len = std::max(len, image(i));
  std::vector<double> y(std::max(len, x.size()), 0.0);
  for (std::size_t i = 1; i <= x.size(); ++i)
    if (x[i - 1] != 0.0) y[image(i) - 1] = sign(i) * x[i - 1];
  return LpVector(std::move(y), p);
}

void validate_isometry(const SignedPermutation &t, std::size_t prefix)
{
  if (!(t.p >= 1.0) || !std::isfinite(t.p)) throw Error(ErrorCode::UnsupportedExponent, "need 1 <= p < inf");
  if (t.signs.empty()) throw Error(ErrorCode::InvalidParameters, "non-isometric input: empty sign pattern");
  for (double s : t.signs)
    if (s != 1.0 && s != -1.0) throw Error(ErrorCode::InvalidParameters, "non-isometric input: sign " + fmt(s));
  const std::size_t m = t.head_perm.size();
  std::vector<bool> seen(m, false);
  for (std::size_t v : t.head_perm)
  {
    if (v == 0 || v > m || seen[v - 1])
      throw Error(ErrorCode::InvalidParameters, "non-isometric input: head is not a permutation of 1..m");
    seen[v - 1] = true;
  }
  std::set<std::size_t> images;
  for (std::size_t i = 1; i <= prefix; ++i)
  {
    const LpVector te = t.apply(LpVector::unit(i, i, t.p));
    if (std::abs(te.norm() - 1.0) > 1e-15 || !images.insert(t.image(i)).second)
      throw Error(ErrorCode::InvalidParameters, "non-isometric input at e_" + std::to_string(i));
  }
}

ConstructionReport isometry_bs_failure(const SignedPermutation &t, std::size_t samples, std::uint64_t seed,
                                       const LambdaGrid &grid, const NormOptions &opts)
{
  validate_isometry(t);
  const Diagonal one(SequenceSpec::constant(1.0));
  const Diagonal w(SequenceSpec::geometric(1.0, 0.5));
  // |T + lambda A| = |T (I + lambda W)| = |I + lambda W| because T is isometric.
  auto norm_at = [&](double lambda) { return one.plus(w, lambda).sup_analysis().sup_abs; };

  ConstructionReport r;
  r.construction = "A = T diag(2^-k), T a signed coordinate isometry";
  r.p = t.p;
  r.t_norm = 1.0;
  const double R = 2.0 * r.t_norm / 0.5 + 1.0;
  const GoldenResult g = golden_section_minimize(norm_at, -R, R, 1e-10);
  r.verdict.t_norm = 1.0;
  r.verdict.tol_used = kDefaultTol;
  r.verdict.min_norm = std::min(g.value, 1.0);
  r.verdict.lambda_star = g.value < 1.0 ? g.argmin : 0.0;
  r.verdict.orthogonal = r.verdict.min_norm >= 1.0 - r.verdict.tol_used;

  const auto count = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 0.5)) + 1;
  std::vector<double> values(static_cast<std::size_t>(count));
  const bool parallel = opts.execution == Execution::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (long k = 0; k < count; ++k) values[static_cast<std::size_t>(k)] = norm_at(grid.lo + static_cast<double>(k) * grid.step);
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  r.grid_min = values[best];
  r.grid_argmin = grid.lo + static_cast<double>(best) * grid.step;
  r.norm_at_minus_one = norm_at(-1.0);

  std::vector<std::size_t> support(kSampleSupport);
  std::iota(support.begin(), support.end(), std::size_t{1});
  for (const LpVector &f : supported_samples(support, t.p, samples, seed))
  {
    std::vector<double> wf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) wf[i] = std::ldexp(f[i], -static_cast<int>(i + 1));
    const LpVector tf = t.apply(f), af = t.apply(LpVector(std::move(wf), t.p));
    absorb(r, check_point(tf, af, kDefaultTol));
    double formula = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      formula += std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(i + 1)), t.p) * std::pow(std::abs(f[i]), t.p);
    r.max_formula_gap = std::max(r.max_formula_gap, std::abs(std::pow(tf.axpy(-1.0, af).norm(), t.p) - formula));
  }
  finish(r);
  return r;
}

EssentialNormCertificate projection_essential_norm(const CoordProjection &p)
{
  EssentialNormCertificate r;
  if (!p.infinite_rank())
  {
    r.finite_rank = true;
    return r;
  }
  const EssentialNormReport e = essential_norm(OperatorRep{p});
  r.value = e.value;
  r.certificate = e.certificate;
  return r;
}

SpanGapReport finite_span_gap_check(const StructuredOp &t, const NormOptions &opts)
{
  const MTDescription mt = norm_attainment_set(OperatorRep{t}, opts);
  if (mt.kind == MTKind::Empty) throw Error(ErrorCode::PreconditionFailed, "M_T empty");
  if (mt.infinite) throw Error(ErrorCode::PreconditionFailed, "span(M_T) is infinite dimensional");
  if (!mt.certified) throw Error(ErrorCode::PreconditionFailed, "M_T is not certified");
  if (mt.kind == MTKind::HeadTailProduct && !mt.head_is_subspace)
    throw Error(ErrorCode::PreconditionFailed, "M_T head part is not a subspace sphere");
  if (mt.kind == MTKind::FinitePointPairs && mt.points.size() > 1)
    throw Error(ErrorCode::PreconditionFailed, "M_T has several antipodal pairs");

  const std::size_t m = t.head_size();
  std::vector<Eigen::VectorXd> head_vecs;
  std::vector<std::size_t> tail_local;
  auto add_coord = [&](std::size_t i)
  {
    if (i <= m)
      head_vecs.push_back(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i - 1)));
    else
      tail_local.push_back(i - m);
  };
  for (std::size_t i : mt.coord_indices) add_coord(i);
  for (const LpVector &x : mt.points)
  {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0) ++nz, at = i + 1;
    if (nz == 1)
    {
      add_coord(at);
      continue;
    }
    if (t.p != 2.0 || x.size() > m)
      throw Error(ErrorCode::PreconditionFailed, "span(M_T) has no coordinate form off l_2");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
    head_vecs.push_back(v);
  }

  // T - K = T (I - P_{X_0}); on l_2 P is orthogonal, otherwise X_0 is a coordinate subspace.
  Eigen::MatrixXd keep = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  if (!head_vecs.empty())
  {
    Eigen::MatrixXd v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(head_vecs.size()));
    for (std::size_t j = 0; j < head_vecs.size(); ++j) v.col(static_cast<Eigen::Index>(j)) = head_vecs[j];
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(v.rows(), v.cols());
    keep -= q * q.transpose();
  }
  const StructuredOp rest{t.head * keep, drop_indices(t.tail, tail_local), t.p};

  SpanGapReport r;
  r.span_dimension = head_vecs.size() + tail_local.size();
  r.norm = op_norm_value(Canonical{t}, opts).first;
  r.residual_norm = op_norm_value(Canonical{rest}, opts).first;
  r.margin = r.norm - r.residual_norm;
  r.ok = r.margin > 0.0;
  return r;
}

}  // namespace bjlab
