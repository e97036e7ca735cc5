// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_NORMS_HPP_
#define BJLAB_NORMS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bjlab/lp_vector.hpp"
#include "bjlab/operator.hpp"
#include "bjlab/spectral.hpp"

namespace bjlab
{

enum class NormMethod
{
  ExactSpectral,
  AnalyticStructured,
  PowerIteration,
  GridOracle
};

std::string_view to_string(NormMethod m);

/// Serial kernels are the reference; parallel ones must agree bit for bit.
enum class Execution
{
  Serial,
  Parallel
};

struct NormOptions
{
  std::size_t random_starts = 8;
  std::uint64_t seed = 0x5eed2024;
  int max_iter = 10000;
  double step_tol = 1e-10;
  double cluster_radius = 1e-4;
  double gap_threshold = 1e-8;
  double merge_tol = kMergeTol;
  bool diagonal_shortcut = true;
  Execution execution = Execution::Parallel;
};

struct NormCertificate
{
  double value = 0.0;
  std::optional<LpVector> maximizer;  // empty: the norm is not attained
  NormMethod method = NormMethod::PowerIteration;
  double residual = 0.0;
  bool converged = true;
};

/// Limit of one start of the nonlinear power iteration.
struct StartResult
{
  LpVector x;
  double value;
  int iterations;
  bool converged;
  double last_step;
};

/// Boyd-type power iteration for |A|_{p->q}: alternates the duality maps of
/// the codomain and domain norms. One run per start (canonical basis first,
/// then seeded random unit vectors); results are in start order.
std::vector<StartResult> multistart_power(const DenseOp &op, const NormOptions &opts);
StartResult power_iterate(const DenseOp &op, LpVector start, const NormOptions &opts);

NormCertificate op_norm_dense(const DenseOp &op, const NormOptions &opts = {});
NormCertificate op_norm_structured(const StructuredOp &op, const NormOptions &opts = {});
NormCertificate op_norm(const OperatorRep &op, const NormOptions &opts = {});

/// Norm value only, with a Riesz-Thorin bound that skips the head
/// computation whenever the tail already dominates. The second member is the
/// residual (0 when exact).
std::pair<double, double> op_norm_value(const Canonical &op, const NormOptions &opts = {});

/// Brute-force maximization of |Ax|_q over a grid on the unit p-sphere,
/// n in {1, 2, 3}. n = 2 uses `resolution` angles, n = 3 uses
/// resolution x 2 resolution points on a hemisphere.
NormCertificate sphere_grid_norm(const DenseOp &op, std::size_t resolution,
                                 Execution execution = Execution::Parallel);

/// Weakly null sequence (e_{m + n_j}) along one residue class of the tail.
struct WeaklyNullSequence
{
  std::size_t offset = 0;   // head size m
  std::size_t period = 1;
  std::size_t residue = 0;  // n_j = residue + 1 (mod period)
  double limit_abs = 0.0;
  double sample_index = 0.0;  // a local index far enough out
  double lower_bound = 0.0;   // |k| at and beyond the sample index
  bool adjoint_coincides = true;
};

struct EssentialNormReport
{
  double value = 0.0;
  std::optional<WeaklyNullSequence> certificate;
};

EssentialNormReport essential_norm(const StructuredOp &op);
/// Dense operators are compact: their essential norm is 0.
EssentialNormReport essential_norm(const OperatorRep &op);

std::optional<WeaklyNullSequence> weakly_null_norming_check(const StructuredOp &op,
                                                            const NormOptions &opts = {});

enum class MTKind
{
  Empty,
  FinitePointPairs,
  SubspaceSphere,
  HeadTailProduct
};

std::string_view to_string(MTKind k);

/// Description of M_T = {x in S_X : |Tx| = |T|}.
struct MTDescription
{
  MTKind kind = MTKind::Empty;
  bool certified = true;
  bool compact = true;
  double p = 2.0;
  /// FinitePointPairs: one representative per +-pair. SubspaceSphere: an
  /// explicit basis. HeadTailProduct: the head part (basis if
  /// `head_is_subspace`, else representatives). Global coordinates.
  std::vector<LpVector> points;
  /// Coordinate basis vectors e_i (1-based global indices). For infinite sets
  /// this is a prefix only.
  std::vector<std::size_t> coord_indices;
  bool infinite = false;
  bool head_is_subspace = false;

  /// Dimension of span(M_T); nullopt when infinite.
  std::optional<std::size_t> span_dimension() const;
};

MTDescription norm_attainment_set(const OperatorRep &op, const NormOptions &opts = {});

}  // namespace bjlab

#endif  // BJLAB_NORMS_HPP_
