// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_OPERATOR_HPP_
#define BJLAB_OPERATOR_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <variant>

#include "bjlab/diagonal.hpp"
#include "bjlab/lp_vector.hpp"
#include "bjlab/sequence.hpp"

namespace bjlab
{

/// Finite matrix l_p^n -> l_q^m.
struct DenseOp
{
  Eigen::MatrixXd matrix;
  double p = 2.0;
  double q = 2.0;
};

/// Block-diagonal operator on l_p: a dense m x m head acting on coordinates
/// 1..m and a diagonal tail acting on m+1, m+2, ... The tail is indexed
/// locally: tail(k) multiplies coordinate m + k.
struct StructuredOp
{
  Eigen::MatrixXd head;
  Diagonal tail;
  double p = 2.0;

  std::size_t head_size() const { return static_cast<std::size_t>(head.rows()); }
  /// Entry on the diagonal at global index n (1-based); head entries included.
  double diagonal_entry(std::size_t n) const;
  bool head_is_diagonal() const;
};

struct FiniteMask
{
  std::set<std::size_t> indices;  // 1-based
};

/// Either an explicit finite index set or a 0/1 pattern over all of N.
using Mask = std::variant<FiniteMask, SequenceSpec>;

/// Coordinate projection x -> 1_D x. `ambient` is the dimension n of l_p^n,
/// or empty for l_p itself.
struct CoordProjection
{
  Mask mask;
  double p = 2.0;
  std::optional<std::size_t> ambient;

  bool contains(std::size_t index) const;
  /// True when the masked index set is infinite.
  bool infinite_rank() const;
  /// Masked indices, at most `limit` of them, in increasing order.
  std::vector<std::size_t> masked_indices(std::size_t limit) const;
  /// Mask as a 0/1 sequence over N.
  SequenceSpec as_sequence() const;
};

using OperatorRep = std::variant<DenseOp, StructuredOp, CoordProjection>;

DenseOp make_dense(Eigen::MatrixXd matrix, double p, double q);
StructuredOp make_structured(Eigen::MatrixXd head, Diagonal tail, double p);
StructuredOp make_structured(Eigen::MatrixXd head, SequenceSpec tail, double p);
CoordProjection make_coordinate_projection(Mask mask, double p,
                                           std::optional<std::size_t> ambient = std::nullopt);

double domain_exponent(const OperatorRep &op);
double codomain_exponent(const OperatorRep &op);

LpVector apply(const OperatorRep &op, const LpVector &x);

/// Dense or structured form of an operator; projections on l_p^n become
/// dense diagonals, projections on l_p become structured.
using Canonical = std::variant<DenseOp, StructuredOp>;
Canonical canonical(const OperatorRep &op);
OperatorRep to_rep(const Canonical &c);

/// Re-blocks a structured operator so that its head has `size` rows.
StructuredOp with_head_size(const StructuredOp &op, std::size_t size);

/// alpha * a + beta * b; both operands must share a representation class.
Canonical linear_combination(const OperatorRep &a, double alpha, const OperatorRep &b, double beta);

/// A = T o diag(w). For projections the weights are enumerated over masked
/// coordinates (the k-th masked index receives w_k). The weights must lie in
/// (0, 1] and tend to zero.
OperatorRep compose_diag_weights(const OperatorRep &op, const SequenceSpec &weights);
/// Same with an explicit finite weight list (dense and finite-ambient only).
OperatorRep compose_diag_weights(const OperatorRep &op, std::span<const double> weights);

}  // namespace bjlab

#endif  // BJLAB_OPERATOR_HPP_
