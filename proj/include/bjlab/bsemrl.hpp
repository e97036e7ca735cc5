// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_BSEMRL_HPP_
#define BJLAB_BSEMRL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bjlab/norms.hpp"
#include "bjlab/operator.hpp"
#include "bjlab/orthogonality.hpp"

namespace bjlab
{

enum class Verdict
{
  True,
  False,
  Unknown
};

enum class Justification
{
  HilbertCharacterization,
  DiagonalCriterion,
  EssentialNormObstruction,
  MPRSSufficient,
  EmptyMT,
  Inconclusive
};

std::string_view to_string(Verdict v);
std::string_view to_string(Justification j);

/// Tri-state answer to "does T have the Bhatia-Semrl property".
struct BSDecision
{
  Verdict verdict = Verdict::Unknown;
  Justification justification = Justification::Inconclusive;
  double norm = 0.0;
  double essential_norm = 0.0;
  std::optional<double> restricted_norm;  // |T restricted to H_0^perp| (Hilbert)
  std::vector<LpVector> h0_basis;         // basis of H_0 / X_0 when finite
  MTDescription mt;
  std::vector<std::string> diagnostics;
  std::vector<std::string> assumptions;
};

/// Hilbert case: T has the property iff M_T is the sphere of a finite
/// dimensional H_0 and |T|_{H_0^perp}| < |T|. Structured p = 2 or dense
/// p = q = 2.
BSDecision bs_decide_hilbert(const OperatorRep &t, const NormOptions &opts = {});

/// l_p, 1 < p < inf: diagonal criterion, essential-norm obstruction,
/// sufficient condition from a connected M_T, else Unknown.
BSDecision bs_decide_lp(const StructuredOp &t, const NormOptions &opts = {});

/// Dispatches on the exponent: p = 2 goes to the Hilbert procedure.
BSDecision bs_decide(const OperatorRep &t, const NormOptions &opts = {});

struct ProjectionOrthogonality
{
  bool orthogonal = false;          // set criterion: mask(P) \ mask(Q) nonempty
  bool numeric_orthogonal = false;  // min_lambda |P + lambda Q| >= |P| - tol
  OrthogonalityVerdict verdict;
  std::optional<LpVector> witness;  // e_i, i in mask(P) \ mask(Q)
  bool witness_in_mp = false;
  bool witness_pointwise = false;   // P e_i _|_B Q e_i
  std::optional<double> half_q_bound;  // |P - Q/2| when not orthogonal
};

ProjectionOrthogonality lp_projection_orthogonality(const CoordProjection &p, const CoordProjection &q,
                                                    double tol = kDefaultTol, const NormOptions &opts = {});

/// |P - I/2|; equals 1/2 for every nontrivial coordinate projection.
double half_identity_bound(const CoordProjection &p, const NormOptions &opts = {});

/// True when the projection is 0 or the identity of its space.
bool is_trivial_projection(const CoordProjection &p);

struct SeparationRow
{
  double delta;
  double measured_sup;   // max |Px| over sampled unit x with d(x, S_R(P)) >= delta
  double analytic_sup;   // t with (1 - t)^p + 1 - t^p = delta^p
  std::size_t samples;
};

struct FiniteProjectionReport
{
  bool trivial = false;
  bool mt_matches_range = false;
  MTDescription mt;
  std::vector<SeparationRow> separation;
  bool ok = false;
};

/// Distance from a unit x to S_R(P) for a coordinate projection, as a
/// function of t = |Px|: ((1 - t)^p + 1 - t^p)^(1/p).
double distance_to_range_sphere(double t, double p);

FiniteProjectionReport finite_rank_lp_projection_bs(const CoordProjection &p, std::uint64_t seed = 1,
                                                    const NormOptions &opts = {});

/// Outcome of replaying a T _|_B A, no-witness construction.
struct ConstructionReport
{
  std::string construction;
  double p = 2.0;
  double t_norm = 0.0;
  OrthogonalityVerdict verdict;
  double grid_min = 0.0;      // min over the lambda grid of |T + lambda A|
  double grid_argmin = 0.0;
  double norm_at_minus_one = 0.0;
  std::size_t samples = 0;
  std::size_t witnesses = 0;  // sampled x in M_T with Tx _|_B Ax
  double min_margin = 0.0;    // smallest |Tx| - min_lambda |Tx + lambda Ax|
  double max_ratio = 0.0;     // largest |Tx - Ax| / |Tx|
  double max_formula_gap = 0.0;  // |Tx - Ax|^p against the closed-form sum
  bool ok = false;
};

struct LambdaGrid
{
  double lo = -4.0;
  double hi = 4.0;
  double step = 1e-3;
};

/// Min of |T + lambda A| over an evenly spaced lambda grid.
std::pair<double, double> lambda_grid_min(const OperatorRep &t, const OperatorRep &a, const LambdaGrid &grid,
                                          const NormOptions &opts = {});

/// A = P o diag(2^-k) over the masked coordinates of an infinite projection.
ConstructionReport infinite_projection_bs_failure(const CoordProjection &p, std::size_t samples = 50,
                                                  std::uint64_t seed = 1, const NormOptions &opts = {},
                                                  const LambdaGrid &grid = {});

/// A = T o diag(1/m^2) for a structured T with |T|_e = |T|.
ConstructionReport essential_norm_bs_failure(const StructuredOp &t, std::size_t samples = 50,
                                             std::uint64_t seed = 1, const NormOptions &opts = {},
                                             const LambdaGrid &grid = {});

/// Isometry of l_p mapping e_i to sign_i e_{pi(i)}: a permutation of the head
/// coordinates 1..m followed by the shift e_{m+k} -> e_{m+k+offset}. Signs
/// repeat with the period of `signs`.
struct SignedPermutation
{
  std::vector<std::size_t> head_perm;  // 1-based images of 1..m
  std::size_t offset = 0;
  std::vector<double> signs{1.0};
  double p = 2.0;

  std::size_t image(std::size_t i) const;
  double sign(std::size_t i) const;
  LpVector apply(const LpVector &x) const;
};

/// Checks |T e_i| = 1 and disjoint images on a prefix; throws otherwise.
void validate_isometry(const SignedPermutation &t, std::size_t prefix = 256);

/// A = T o diag(2^-k); |T + lambda A| = sup_k |1 + lambda 2^-k| since T is isometric.
ConstructionReport isometry_bs_failure(const SignedPermutation &t, std::size_t samples = 50, std::uint64_t seed = 1,
                                       const LambdaGrid &grid = {}, const NormOptions &opts = {});

struct EssentialNormCertificate
{
  double value = 0.0;
  std::optional<WeaklyNullSequence> certificate;
  bool finite_rank = false;
};

EssentialNormCertificate projection_essential_norm(const CoordProjection &p);

struct SpanGapReport
{
  double norm = 0.0;
  double residual_norm = 0.0;  // |T - T P_{X_0}|
  double margin = 0.0;
  std::size_t span_dimension = 0;
  bool ok = false;
};

/// K = T o P_{X_0} with X_0 = span(M_T); requires a certified finite
/// dimensional M_T.
SpanGapReport finite_span_gap_check(const StructuredOp &t, const NormOptions &opts = {});

}  // namespace bjlab

#endif  // BJLAB_BSEMRL_HPP_
