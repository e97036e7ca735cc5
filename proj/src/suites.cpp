// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "bjlab/error.hpp"
#include "bjlab/orthogonality.hpp"

namespace bjlab
{

namespace
{

const char *kMIdeal = "K(l_p) is an M-ideal in B(l_p) (background fact)";
const char *kMpSpace = "l_p is an M_p-space (background fact)";
const char *kSsd = "strong subdifferentiability leg implied by background results, not measured";
const char *kLp = "coordinate projections are L^p-projections";

std::string num(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string mask_name(const Mask &m)
{
  std::ostringstream os;
  if (const auto *f = std::get_if<FiniteMask>(&m))
  {
    os << '{';
    bool first = true;
    for (std::size_t i : f->indices)
    {
      os << (first ? "" : ",") << i;
      first = false;
    }
    os << '}';
    return os.str();
  }
  const SequenceSpec &s = std::get<SequenceSpec>(m);
  os << "pattern[";
  const std::size_t L = s.period();
  for (std::size_t i = 1; i <= L; ++i) os << (i > 1 ? "," : "") << s.family_value(i);
  os << ']';
  for (const auto &[k, v] : s.overrides()) os << " k" << k << '=' << v;
  return os.str();
}

std::vector<double> exponents(const SuiteConfig &c)
{
  return c.p_values.empty() ? std::vector<double>{1.0, 1.5, 2.0, 3.0} : c.p_values;
}

std::vector<std::pair<std::string, SequenceSpec>> infinite_masks()
{
  return {
    {"all", SequenceSpec::constant(1.0)},
    {"from-2", SequenceSpec(Constant{1.0}, {{1, 0.0}})},
    {"even", SequenceSpec::periodic({0.0, 1.0})},
    {"odd", SequenceSpec::periodic({1.0, 0.0})},
    {"every-third", SequenceSpec::periodic({0.0, 0.0, 1.0})},
    {"pattern-110-drop-2", SequenceSpec(Periodic{{1.0, 1.0, 0.0}}, {{2, 0.0}})},
  };
}

// Runs `body(i)` for every case, in parallel when asked; rows come back in case order.
SuiteReport collect(SuiteReport rep, std::size_t count, const NormOptions &opts,
                    const std::function<std::vector<DetailRow>(std::size_t)> &body)
{
  std::vector<std::vector<DetailRow>> rows(count);
  const bool parallel = opts.execution == Execution::Parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < static_cast<long>(count); ++i)
  {
    const auto k = static_cast<std::size_t>(i);
    try
    {
      rows[k] = body(k);
    }
    catch (const std::exception &e)
    {
      rows[k] = {DetailRow{std::to_string(k), "", 0.0, 0.0, false, false, std::string("error: ") + e.what()}};
    }
  }
  rep.cases = count;
  for (auto &r : rows)
  {
    bool bad = false, unknown = false;
    for (const DetailRow &d : r)
    {
      bad = bad || !d.ok;
      unknown = unknown || d.unknown;
    }
    if (bad) ++rep.violations;
    if (unknown) ++rep.unknowns;
    for (DetailRow &d : r) rep.details.push_back(std::move(d));
  }
  return rep;
}

SuiteReport report(std::string suite, std::string statement, std::vector<std::string> assumptions, std::uint64_t seed)
{
  SuiteReport r;
  r.suite = std::move(suite);
  r.statement = std::move(statement);
  r.assumptions = std::move(assumptions);
  r.seed = seed;
  return r;
}

NormOptions serial(NormOptions o)
{
  o.execution = Execution::Serial;
  return o;
}

struct MaskCase
{
  std::size_t n;
  double p;
  FiniteMask a, b;
};

SuiteReport lemma_21(const SuiteConfig &c)
{
  SuiteReport rep = report("lemma-2.1", "every nontrivial coordinate projection P on l_p^n has |P - I/2| = 1/2, so P is not orthogonal to I", {kLp}, c.seed);
  std::vector<MaskCase> cases;
  for (std::size_t n = 2; n <= c.n.value_or(6); ++n)
    for (double p : exponents(c))
      for (const FiniteMask &m : all_masks(n)) cases.push_back({n, p, m, {}});
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const MaskCase &k = cases[i];
    const CoordProjection pr = make_coordinate_projection(k.a, k.p, k.n);
    const double v = half_identity_bound(pr, inner);
    const OperatorRep id = DenseOp{Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k.n), static_cast<Eigen::Index>(k.n)), k.p, k.p};
    const bool orth = bj_orthogonal_op(OperatorRep{pr}, id, c.tol, inner).orthogonal;
    DetailRow row{std::to_string(i), "n=" + std::to_string(k.n) + " p=" + num(k.p) + " P=" + mask_name(k.a), v, 0.5,
                  std::abs(v - 0.5) <= 1e-6 && !orth, false, orth ? "P _|_B I reported" : ""};
    return std::vector<DetailRow>{row};
  });
}

SuiteReport prop_22(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-2.2", "for nontrivial distinct coordinate projections, P _|_B Q iff mask(P) \\ mask(Q) is nonempty; then e_i witnesses it, otherwise |P - Q/2| <= 1/2", {kLp}, c.seed);
  std::vector<MaskCase> cases;
  for (std::size_t n = 2; n <= c.n.value_or(6); ++n)
  {
    const std::vector<FiniteMask> masks = all_masks(n);
    for (double p : exponents(c))
      for (const FiniteMask &a : masks)
        for (const FiniteMask &b : masks)
          if (a.indices != b.indices) cases.push_back({n, p, a, b});
  }
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const MaskCase &k = cases[i];
    const CoordProjection P = make_coordinate_projection(k.a, k.p, k.n), Q = make_coordinate_projection(k.b, k.p, k.n);
    const ProjectionOrthogonality r = lp_projection_orthogonality(P, Q, c.tol, inner);
    bool ok = r.numeric_orthogonal == r.orthogonal;
    std::string note = std::string("set=") + (r.orthogonal ? "1" : "0") + " numeric=" + (r.numeric_orthogonal ? "1" : "0");
    if (r.orthogonal)
      ok = ok && r.witness_in_mp && r.witness_pointwise;
    else
      ok = ok && r.half_q_bound && *r.half_q_bound <= 0.5 + 1e-8;
    if (k.p == 2.0)
    {
      const auto cp = std::get<DenseOp>(canonical(OperatorRep{P})), cq = std::get<DenseOp>(canonical(OperatorRep{Q}));
      const bool found = hilbert_bj_criterion(cp, cq, c.tol, inner).found;
      ok = ok && found == r.orthogonal;
      note += std::string(" inner-product=") + (found ? "1" : "0");
    }
    const double measured = r.orthogonal ? r.verdict.min_norm : r.half_q_bound.value_or(0.0);
    DetailRow row{std::to_string(i), "n=" + std::to_string(k.n) + " p=" + num(k.p) + " P=" + mask_name(k.a) + " Q=" + mask_name(k.b),
                  measured, r.orthogonal ? 1.0 : 0.5, ok, false, note};
    return std::vector<DetailRow>{row};
  });
}

SuiteReport prop_23(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-2.3", "a finite rank coordinate projection has M_P = S_R(P), and points at distance >= delta from S_R(P) have |Px| <= t(delta) < 1", {kLp}, c.seed);
  const std::size_t n = c.n.value_or(4);
  std::vector<MaskCase> cases;
  for (double p : exponents(c))
    for (const FiniteMask &m : all_masks(n, true)) cases.push_back({n, p, m, {}});
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const MaskCase &k = cases[i];
    const FiniteProjectionReport r = finite_rank_lp_projection_bs(make_coordinate_projection(k.a, k.p, k.n), c.seed + i, inner);
    std::vector<DetailRow> rows;
    for (const SeparationRow &s : r.separation)
    {
      rows.push_back({std::to_string(i), "n=" + std::to_string(k.n) + " p=" + num(k.p) + " P=" + mask_name(k.a) + " delta=" + num(s.delta),
                      s.measured_sup, s.analytic_sup, r.ok, false,
                      "samples=" + std::to_string(s.samples) + (r.trivial ? " trivial" : "") + (r.mt_matches_range ? "" : " M_P mismatch")});
    }
    return rows;
  });
}

std::vector<DetailRow> construction_rows(std::size_t i, const std::string &param, const ConstructionReport &r)
{
  const std::string note = "witnesses=" + std::to_string(r.witnesses) + " samples=" + std::to_string(r.samples) +
                           " orthogonal=" + (r.verdict.orthogonal ? "1" : "0") + " norm(T-A)=" + num(r.norm_at_minus_one) +
                           " formula-gap=" + num(r.max_formula_gap);
  return {
    {std::to_string(i), param + " quantity=lambda-grid-min", r.grid_min, r.t_norm - 1e-8, r.ok, false, note},
    {std::to_string(i), param + " quantity=min-margin", r.min_margin, 0.0, r.ok, false, "max |Tx-Ax|/|Tx|=" + num(r.max_ratio)},
  };
}

SuiteReport prop_25(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-2.5", "an infinite rank coordinate projection P is orthogonal to A = P diag(2^-k) but no x in M_P has Px _|_B Ax", {kLp}, c.seed);
  std::vector<std::pair<std::string, CoordProjection>> cases;
  for (double p : exponents(c))
    for (const auto &[name, m] : infinite_masks()) cases.emplace_back(name, make_coordinate_projection(m, p));
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const auto &[name, pr] = cases[i];
    const ConstructionReport r = infinite_projection_bs_failure(pr, 50, c.seed + i, inner);
    return construction_rows(i, "mask=" + name + " p=" + num(pr.p), r);
  });
}

SuiteReport prop_32(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-3.2", "if T has the property and span(M_T) is finite dimensional then K = T P_{X_0} satisfies |T - K| < |T|, so |T|_e < |T|", {}, c.seed);
  const std::size_t count = c.n.value_or(20);
  std::mt19937_64 gen(c.seed);
  std::vector<StructuredOp> ops;
  const double ps[] = {2.0, 1.5, 3.0};
  while (ops.size() < count)
  {
    const double p = ps[ops.size() % 3];
    StructuredOp t = random_structured(gen, p);
    if (p != 2.0) t.head = t.head.diagonal().asDiagonal();
    if (t.head.cwiseAbs().maxCoeff() == 0.0 && t.tail.sup_analysis().sup_abs == 0.0) continue;
    const MTDescription mt = norm_attainment_set(OperatorRep{t}, c.norm);
    const bool usable = mt.kind != MTKind::Empty && mt.certified && !mt.infinite &&
                        !(mt.kind == MTKind::HeadTailProduct && !mt.head_is_subspace) &&
                        !(mt.kind == MTKind::FinitePointPairs && mt.points.size() > 1);
    // The implication also needs the property itself.
    if (usable && bs_decide(OperatorRep{t}, c.norm).verdict == Verdict::True) ops.push_back(std::move(t));
  }
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), count, c.norm, [&](std::size_t i)
  {
    const SpanGapReport r = finite_span_gap_check(ops[i], inner);
    return std::vector<DetailRow>{{std::to_string(i),
                                   "p=" + num(ops[i].p) + " head=" + std::to_string(ops[i].head_size()) + " dim X_0=" + std::to_string(r.span_dimension),
                                   r.residual_norm, r.norm, r.ok, false, "margin=" + num(r.margin)}};
  });
}

SuiteReport prop_38(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-3.8", "a coordinate projection has |P|_e < 1 iff it has finite rank; infinite rank gives |P|_e = 1 with a weakly null norming sequence", {}, c.seed);
  std::vector<std::pair<std::string, CoordProjection>> cases;
  for (double p : exponents(c))
  {
    cases.emplace_back("finite {1,2}", make_coordinate_projection(FiniteMask{{1, 2}}, p));
    cases.emplace_back("finite {3}", make_coordinate_projection(FiniteMask{{3}}, p));
    cases.emplace_back("finite {1,4,6}", make_coordinate_projection(FiniteMask{{1, 4, 6}}, p));
    cases.emplace_back("pattern 0 with k1=k5=1", make_coordinate_projection(SequenceSpec(Constant{0.0}, {{1, 1.0}, {5, 1.0}}), p));
    cases.emplace_back("identity on l_p^4", make_coordinate_projection(FiniteMask{{1, 2, 3, 4}}, p, 4));
    for (const auto &[name, m] : infinite_masks()) cases.emplace_back("infinite " + name, make_coordinate_projection(m, p));
  }
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const auto &[name, pr] = cases[i];
    const EssentialNormCertificate e = projection_essential_norm(pr);
    const bool infinite = pr.infinite_rank();
    bool ok = infinite ? (e.value == 1.0 && e.certificate && e.certificate->lower_bound >= 1.0 - 1e-9) : e.value == 0.0;
    std::string note = infinite && e.certificate ? "weakly-null lower bound=" + num(e.certificate->lower_bound) : "finite rank";
    return std::vector<DetailRow>{{std::to_string(i), "mask=" + name + " p=" + num(pr.p), e.value, infinite ? 1.0 : 0.0, ok, false, note}};
  });
}

SuiteReport prop_39(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-3.9", "no isometry T of l_p has the property: A = T diag(2^-k) is orthogonal to T with no witness in M_T = S", {}, c.seed);
  std::vector<std::pair<std::string, SignedPermutation>> cases = {
    {"identity", SignedPermutation{{}, 0, {1.0}, 2.0}},
    {"shift-by-one", SignedPermutation{{}, 1, {1.0}, 1.5}},
    {"sign-flips", SignedPermutation{{}, 0, {1.0, -1.0}, 3.0}},
    {"swap-head-shift-2", SignedPermutation{{2, 1, 3}, 2, {1.0, -1.0, -1.0}, 1.0}},
  };
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), cases.size(), c.norm, [&](std::size_t i)
  {
    const auto &[name, t] = cases[i];
    const ConstructionReport r = isometry_bs_failure(t, 50, c.seed + i, LambdaGrid{}, inner);
    return construction_rows(i, "isometry=" + name + " p=" + num(t.p), r);
  });
}

// Structured T with |T|_e = |T| attained at infinitely many tail coordinates.
StructuredOp essential_case(std::mt19937_64 &gen, std::size_t i)
{
  const double ps[] = {1.5, 2.0, 3.0};
  const double p = ps[i % 3];
  std::uniform_real_distribution<double> u(-1.0, 1.0), lvl(0.5, 2.0);
  const double L = lvl(gen);
  std::vector<std::pair<std::size_t, double>> ov;
  Family fam = Constant{u(gen) < 0 ? -L : L};
  if (i % 2 == 1)
  {
    std::uniform_int_distribution<std::size_t> len(2, 4);
    std::vector<double> pat(len(gen));
    for (double &v : pat) v = 0.95 * L * u(gen);
    pat[std::uniform_int_distribution<std::size_t>(0, pat.size() - 1)(gen)] = u(gen) < 0 ? -L : L;
    fam = Periodic{pat};
  }
  if (u(gen) > 0) ov.emplace_back(std::uniform_int_distribution<std::size_t>(1, 5)(gen), 0.9 * L * u(gen));
  const auto m = std::uniform_int_distribution<Eigen::Index>(1, 4)(gen);
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) h(a, b) = u(gen);
  // Keep the head strictly below the tail level via the Riesz-Thorin bound.
  const double c1 = h.cwiseAbs().colwise().sum().maxCoeff(), ci = h.cwiseAbs().rowwise().sum().maxCoeff();
  const double rt = std::pow(c1, 1.0 / p) * std::pow(ci, 1.0 - 1.0 / p);
  if (rt > 0.0) h *= 0.9 * L / rt;
  return make_structured(std::move(h), SequenceSpec(std::move(fam), std::move(ov)), p);
}

SuiteReport prop_45(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-4.5", "if |T|_e = |T| then A = T diag(1/m^2) is orthogonal to T and no x in M_T has Tx _|_B Ax", {kMpSpace}, c.seed);
  const std::size_t count = c.n.value_or(20);
  std::mt19937_64 gen(c.seed);
  std::vector<StructuredOp> ops;
  for (std::size_t i = 0; i < count; ++i) ops.push_back(essential_case(gen, i));
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), count, c.norm, [&](std::size_t i)
  {
    const ConstructionReport r = essential_norm_bs_failure(ops[i], 50, c.seed + i, inner);
    return construction_rows(i, "p=" + num(ops[i].p) + " head=" + std::to_string(ops[i].head_size()), r);
  });
}

bool diagonal_predicate(const SequenceSpec &s)
{
  const SeqAnalytics a = s.analytics();
  return a.attainment == Attainment::AttainedFinitely && !ties(a.limsup_abs, a.sup_abs);
}

SuiteReport prop_48(const SuiteConfig &c)
{
  SuiteReport rep = report("prop-4.8", "a diagonal operator on l_p has the property iff its supremum is attained at finitely many indices and exceeds the limsup", {kMIdeal, kMpSpace}, c.seed);
  const std::size_t count = std::max<std::size_t>(c.n.value_or(100), 3);
  std::mt19937_64 gen(c.seed);
  std::vector<std::pair<SequenceSpec, double>> cases = {
    {SequenceSpec::power(1.0, -1.0, 1.0), 3.0},
    {SequenceSpec::constant(1.0), 1.5},
    {SequenceSpec(Constant{0.5}, {{1, 1.0}}), 3.0},
  };
  std::uniform_int_distribution<int> pick(0, 1);
  while (cases.size() < count)
  {
    SequenceSpec s = random_sequence(gen);
    const double p = pick(gen) ? 3.0 : 1.5;
    if (s.analytics().sup_abs > 0.0) cases.emplace_back(std::move(s), p);
  }
  const NormOptions inner = serial(c.norm);
  return collect(std::move(rep), count, c.norm, [&](std::size_t i)
  {
    const auto &[s, p] = cases[i];
    const bool pred = diagonal_predicate(s);
    const BSDecision d = bs_decide_lp(make_structured(Eigen::MatrixXd(0, 0), s, p), inner);
    const bool ok = d.verdict != Verdict::Unknown && (d.verdict == Verdict::True) == pred;
    return std::vector<DetailRow>{{std::to_string(i), "p=" + num(p) + " case=" + std::to_string(i),
                                   d.verdict == Verdict::True ? 1.0 : 0.0, pred ? 1.0 : 0.0, ok, false,
                                   std::string(to_string(d.verdict)) + " " + std::string(to_string(d.justification))}};
  });
}

}  // namespace

SequenceSpec random_sequence(std::mt19937_64 &gen)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> fam(0, 3), nov(0, 2), snap(0, 3);
  std::uniform_int_distribution<std::size_t> idx(1, 6);
  Family f;
  switch (fam(gen))
  {
  case 0: f = Constant{2.0 * u(gen)}; break;
  case 1: f = Geometric{2.0 * u(gen), 0.95 * u(gen)}; break;
  case 2: f = Power{u(gen), u(gen), 0.5 + 1.25 * (u(gen) + 1.0)}; break;
  default:
  {
    std::vector<double> pat(std::uniform_int_distribution<std::size_t>(1, 4)(gen));
    for (double &v : pat) v = 2.0 * u(gen);
    f = Periodic{pat};
  }
  }
  const SequenceSpec base(f);
  std::vector<std::pair<std::size_t, double>> ov;
  const int k = nov(gen);
  for (int j = 0; j < k; ++j)
  {
    // Sometimes land exactly on the limsup to exercise ties.
    const double v = snap(gen) == 0 ? (u(gen) < 0 ? -1.0 : 1.0) * base.limsup_abs() : 2.0 * u(gen);
    ov.emplace_back(idx(gen), v);
  }
  return SequenceSpec(f, std::move(ov));
}

StructuredOp random_structured(std::mt19937_64 &gen, double p)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto m = std::uniform_int_distribution<Eigen::Index>(1, 4)(gen);
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) h(i, j) = u(gen);
  return make_structured(std::move(h), random_sequence(gen), p);
}

std::vector<FiniteMask> all_masks(std::size_t n, bool include_full)
{
  std::vector<FiniteMask> out;
  const std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t bits = 1; bits <= full; ++bits)
  {
    if (bits == full && !include_full) continue;
    FiniteMask m;
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) m.indices.insert(i + 1);
    out.push_back(std::move(m));
  }
  return out;
}

SuiteReport equivalence_suite(Space space, std::size_t count, std::uint64_t seed, bool adversarial, const NormOptions &opts)
{
  if (count == 0) throw Error(ErrorCode::InvalidParameters, "count must be at least 1");
  SuiteReport rep;
  rep.seed = seed;
  if (space == Space::Hilbert)
  {
    rep.suite = "equiv-hilbert";
    rep.statement = "on l_2, T has the property iff |T|_e < |T|, and then M_T is the sphere of a finite dimensional subspace";
  }
  else
  {
    rep.suite = "equiv-lp";
    rep.statement = "on l_p, the property forces |T|_e < |T|, and |T|_e < |T| forces a compact M_T";
    rep.assumptions = {kMIdeal, kMpSpace};
  }
  rep.assumptions.push_back(kSsd);

  std::mt19937_64 gen(seed);
  std::vector<StructuredOp> ops;
  std::uniform_int_distribution<int> pick(0, 1);
  for (std::size_t i = 0; i < count; ++i)
  {
    const double p = space == Space::Hilbert ? 2.0 : (pick(gen) ? 3.0 : 1.5);
    StructuredOp t = random_structured(gen, p);
    if (i == 0 && adversarial)
    {
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2, 2);
      h(0, 0) = 1.0;
      h(1, 1) = 1.0 - 1e-12;
      t = make_structured(std::move(h), SequenceSpec::constant(0.5), p);
    }
    ops.push_back(std::move(t));
  }
  const NormOptions inner = serial(opts);
  return collect(std::move(rep), count, opts, [&](std::size_t i)
  {
    const StructuredOp &t = ops[i];
    DetailRow row{std::to_string(i), "p=" + num(t.p) + " head=" + std::to_string(t.head_size()), 0.0, 0.0, true, false, ""};
    const BSDecision d = space == Space::Hilbert ? bs_decide_hilbert(OperatorRep{t}, inner) : bs_decide_lp(t, inner);
    row.measured = d.essential_norm;
    row.bound = d.norm;
    row.note = std::string(to_string(d.verdict)) + " " + std::string(to_string(d.justification));
    const double tie = (space == Space::Hilbert ? inner.merge_tol : inner.gap_threshold) * d.norm;
    const bool ess_below = d.norm - d.essential_norm > tie;
    if (d.verdict == Verdict::Unknown) row.unknown = true;
    if (space == Space::Hilbert)
    {
      if (!row.unknown) row.ok = (d.verdict == Verdict::True) == ess_below;
      if (ess_below && !row.unknown)
        row.ok = row.ok && d.mt.kind != MTKind::Empty && !d.mt.infinite;
    }
    else
    {
      if (d.verdict == Verdict::True) row.ok = ess_below;
      if (ess_below)
      {
        const MTDescription mt = norm_attainment_set(OperatorRep{t}, inner);
        row.ok = row.ok && mt.kind != MTKind::Empty && mt.compact && !mt.infinite;
      }
    }
    return std::vector<DetailRow>{row};
  });
}

const std::vector<std::string> &suite_names()
{
  static const std::vector<std::string> names = {"lemma-2.1", "prop-2.2", "prop-2.3", "prop-2.5", "prop-3.2", "prop-3.8",
                                                 "prop-3.9", "prop-4.5", "prop-4.8", "equiv-hilbert", "equiv-lp"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteConfig &config)
{
  static const std::map<std::string, std::function<SuiteReport(const SuiteConfig &)>, std::less<>> table = {
    {"lemma-2.1", lemma_21},
    {"prop-2.2", prop_22},
    {"prop-2.3", prop_23},
    {"prop-2.5", prop_25},
    {"prop-3.2", prop_32},
    {"prop-3.8", prop_38},
    {"prop-3.9", prop_39},
    {"prop-4.5", prop_45},
    {"prop-4.8", prop_48},
    {"equiv-hilbert", [](const SuiteConfig &c) { return equivalence_suite(Space::Hilbert, c.n.value_or(100), c.seed, c.adversarial, c.norm); }},
    {"equiv-lp", [](const SuiteConfig &c) { return equivalence_suite(Space::Lp, c.n.value_or(100), c.seed, false, c.norm); }},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::InvalidParameters, "unknown suite '" + std::string(name) + "'");
  return it->second(config);
}

}  // namespace bjlab
