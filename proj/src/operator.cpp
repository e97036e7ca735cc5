// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bjlab/error.hpp"

namespace bjlab
{

namespace
{

void check_exponent(double p, const char *name)
{
  if (!(p >= 1.0) || !std::isfinite(p))
  {
    throw Error(ErrorCode::UnsupportedExponent,
                std::string(name) + " must satisfy 1 <= p < inf, got " + std::to_string(p));
  }
}

void check_finite(const Eigen::MatrixXd &m)
{
  if (!m.allFinite()) throw Error(ErrorCode::InvalidParameters, "matrix has non-finite entries");
}

std::string shape_name(const Canonical &c)
{
  if (const auto *d = std::get_if<DenseOp>(&c))
  {
    return "dense " + std::to_string(d->matrix.rows()) + "x" + std::to_string(d->matrix.cols());
  }
  return "structured (head " + std::to_string(std::get<StructuredOp>(c).head_size()) + ")";
}

void check_weight_value(double w)
{
  if (!(w > 0.0 && w <= 1.0))
  {
    throw Error(ErrorCode::InvalidWitnessWeights,
                "weights must lie in (0, 1], got " + std::to_string(w));
  }
}

void check_weights(const SequenceSpec &w)
{
  if (!w.decays()) throw Error(ErrorCode::InvalidWitnessWeights, "weights must tend to zero");
  bool ok = false;
  if (const auto *g = std::get_if<Geometric>(&w.family()))
    ok = g->a > 0.0 && g->r > 0.0 && g->a * g->r <= 1.0;
  else if (const auto *pw = std::get_if<Power>(&w.family()))
    ok = pw->a == 0.0 && pw->b > 0.0 && pw->b <= 1.0;
  if (!ok) throw Error(ErrorCode::InvalidWitnessWeights, "weight family must be positive and bounded by 1");
  for (const auto &[index, value] : w.overrides()) check_weight_value(value);
}

}  // namespace

double StructuredOp::diagonal_entry(std::size_t n) const
{
  const std::size_t m = head_size();
  if (n <= m) return head(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
  return tail(n - m);
}

bool StructuredOp::head_is_diagonal() const
{
  for (Eigen::Index i = 0; i < head.rows(); ++i)
    for (Eigen::Index j = 0; j < head.cols(); ++j)
      if (i != j && head(i, j) != 0.0) return false;
  return true;
}

bool CoordProjection::contains(std::size_t index) const
{
  if (index == 0 || (ambient && index > *ambient)) return false;
  if (const auto *f = std::get_if<FiniteMask>(&mask)) return f->indices.count(index) > 0;
  return std::get<SequenceSpec>(mask)(index) == 1.0;
}

bool CoordProjection::infinite_rank() const
{
  if (ambient) return false;
  if (std::holds_alternative<FiniteMask>(mask)) return false;
  return std::get<SequenceSpec>(mask).limsup_abs() == 1.0;
}

std::vector<std::size_t> CoordProjection::masked_indices(std::size_t limit) const
{
  std::vector<std::size_t> out;
  if (const auto *f = std::get_if<FiniteMask>(&mask))
  {
    for (std::size_t i : f->indices)
    {
      if (out.size() >= limit || (ambient && i > *ambient)) break;
      out.push_back(i);
    }
    return out;
  }
  const SequenceSpec &s = std::get<SequenceSpec>(mask);
  std::size_t bound = ambient ? *ambient : (infinite_rank() ? SIZE_MAX : s.last_override());
  for (std::size_t i = 1; i <= bound && out.size() < limit; ++i)
    if (s(i) == 1.0) out.push_back(i);
  return out;
}

SequenceSpec CoordProjection::as_sequence() const
{
  if (const auto *f = std::get_if<FiniteMask>(&mask))
  {
    std::vector<std::pair<std::size_t, double>> ov;
    for (std::size_t i : f->indices) ov.emplace_back(i, 1.0);
    return SequenceSpec(Constant{0.0}, std::move(ov));
  }
  return std::get<SequenceSpec>(mask);
}

DenseOp make_dense(Eigen::MatrixXd matrix, double p, double q)
{
  check_exponent(p, "domain exponent");
  check_exponent(q, "codomain exponent");
  check_finite(matrix);
  return DenseOp{std::move(matrix), p, q};
}

StructuredOp make_structured(Eigen::MatrixXd head, Diagonal tail, double p)
{
  check_exponent(p, "exponent");
  if (head.rows() != head.cols())
    throw Error(ErrorCode::DimensionMismatch, "structured head must be square");
  check_finite(head);
  return StructuredOp{std::move(head), std::move(tail), p};
}

StructuredOp make_structured(Eigen::MatrixXd head, SequenceSpec tail, double p)
{
  return make_structured(std::move(head), Diagonal(std::move(tail)), p);
}

CoordProjection make_coordinate_projection(Mask mask, double p, std::optional<std::size_t> ambient)
{
  check_exponent(p, "exponent");
  if (const auto *f = std::get_if<FiniteMask>(&mask))
  {
    for (std::size_t i : f->indices)
    {
      if (i == 0) throw Error(ErrorCode::InvalidParameters, "mask indices start at 1");
      if (ambient && i > *ambient)
        throw Error(ErrorCode::DimensionMismatch, "mask index exceeds ambient dimension");
    }
  }
  else if (!std::get<SequenceSpec>(mask).is_zero_one())
  {
    throw Error(ErrorCode::InvalidParameters, "tail pattern mask must take values in {0, 1}");
  }
  return CoordProjection{std::move(mask), p, ambient};
}

double domain_exponent(const OperatorRep &op)
{
  return std::visit([](const auto &o) { return o.p; }, op);
}

double codomain_exponent(const OperatorRep &op)
{
  if (const auto *d = std::get_if<DenseOp>(&op)) return d->q;
  return domain_exponent(op);
}

LpVector apply(const OperatorRep &op, const LpVector &x)
{
  if (x.p() != domain_exponent(op))
    throw Error(ErrorCode::InvalidParameters, "vector exponent differs from operator domain");
  if (const auto *d = std::get_if<DenseOp>(&op))
  {
    if (static_cast<Eigen::Index>(x.size()) != d->matrix.cols())
    {
      throw Error(ErrorCode::DimensionMismatch,
                  "dense operator expects " + std::to_string(d->matrix.cols()) +
                    " coordinates, got " + std::to_string(x.size()));
    }
    Eigen::Map<const Eigen::VectorXd> xv(x.coords().data(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd y = d->matrix * xv;
    return LpVector(std::vector<double>(y.data(), y.data() + y.size()), d->q);
  }
  if (const auto *s = std::get_if<StructuredOp>(&op))
  {
    const std::size_t m = s->head_size();
    std::vector<double> y(std::max(x.size(), m), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        y[i] += s->head(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x.at(j);
    for (std::size_t i = m; i < x.size(); ++i) y[i] = s->tail(i - m + 1) * x[i];
    return LpVector(std::move(y), s->p);
  }
  const auto &pr = std::get<CoordProjection>(op);
  if (pr.ambient && x.size() > *pr.ambient)
    throw Error(ErrorCode::DimensionMismatch, "vector longer than ambient dimension");
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = pr.contains(i + 1) ? x[i] : 0.0;
  return LpVector(std::move(y), pr.p);
}

Canonical canonical(const OperatorRep &op)
{
  if (const auto *d = std::get_if<DenseOp>(&op)) return *d;
  if (const auto *s = std::get_if<StructuredOp>(&op)) return *s;
  const auto &pr = std::get<CoordProjection>(op);
  if (pr.ambient)
  {
    const auto n = static_cast<Eigen::Index>(*pr.ambient);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = pr.contains(static_cast<std::size_t>(i) + 1) ? 1.0 : 0.0;
    return DenseOp{std::move(m), pr.p, pr.p};
  }
  return StructuredOp{Eigen::MatrixXd(0, 0), Diagonal(pr.as_sequence()), pr.p};
}

OperatorRep to_rep(const Canonical &c)
{
  return std::visit([](const auto &o) -> OperatorRep { return o; }, c);
}

StructuredOp with_head_size(const StructuredOp &op, std::size_t size)
{
  const std::size_t m = op.head_size();
  if (size <= m) return op;
  const auto n = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd head = Eigen::MatrixXd::Zero(n, n);
  head.topLeftCorner(op.head.rows(), op.head.cols()) = op.head;
  for (std::size_t i = m; i < size; ++i)
    head(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = op.tail(i - m + 1);
  return StructuredOp{std::move(head), op.tail.shifted(size - m), op.p};
}

Canonical linear_combination(const OperatorRep &a, double alpha, const OperatorRep &b, double beta)
{
  const Canonical ca = canonical(a), cb = canonical(b);
  if (ca.index() != cb.index())
  {
    throw Error(ErrorCode::UnsupportedCombination,
                "cannot combine " + shape_name(ca) + " with " + shape_name(cb));
  }
  if (const auto *da = std::get_if<DenseOp>(&ca))
  {
    const auto &db = std::get<DenseOp>(cb);
    if (da->matrix.rows() != db.matrix.rows() || da->matrix.cols() != db.matrix.cols())
      throw Error(ErrorCode::DimensionMismatch, shape_name(ca) + " vs " + shape_name(cb));
    if (da->p != db.p || da->q != db.q)
      throw Error(ErrorCode::InvalidParameters, "operators act between different spaces");
    return DenseOp{alpha * da->matrix + beta * db.matrix, da->p, da->q};
  }
  const auto &sa = std::get<StructuredOp>(ca);
  const auto &sb = std::get<StructuredOp>(cb);
  if (sa.p != sb.p) throw Error(ErrorCode::InvalidParameters, "operators act on different l_p");
  const std::size_t m = std::max(sa.head_size(), sb.head_size());
  const StructuredOp xa = with_head_size(sa, m), xb = with_head_size(sb, m);
  return StructuredOp{alpha * xa.head + beta * xb.head, xa.tail.scaled(alpha).plus(xb.tail, beta), sa.p};
}

OperatorRep compose_diag_weights(const OperatorRep &op, const SequenceSpec &weights)
{
  check_weights(weights);
  if (const auto *d = std::get_if<DenseOp>(&op))
  {
    Eigen::MatrixXd m = d->matrix;
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= weights(static_cast<std::size_t>(j) + 1);
    return DenseOp{std::move(m), d->p, d->q};
  }
  if (const auto *s = std::get_if<StructuredOp>(&op))
  {
    Eigen::MatrixXd h = s->head;
    for (Eigen::Index j = 0; j < h.cols(); ++j) h.col(j) *= weights(static_cast<std::size_t>(j) + 1);
    return StructuredOp{std::move(h), s->tail.times(Factor{weights, s->head_size(), {}}), s->p};
  }
  const auto &pr = std::get<CoordProjection>(op);
  const SequenceSpec mask = pr.as_sequence();
  if (pr.ambient)
  {
    const auto n = static_cast<Eigen::Index>(*pr.ambient);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (pr.contains(static_cast<std::size_t>(i) + 1)) m(i, i) = weights(++rank);
    return DenseOp{std::move(m), pr.p, pr.p};
  }
  return StructuredOp{Eigen::MatrixXd(0, 0), Diagonal(mask).times(Factor{weights, 0, mask}), pr.p};
}

OperatorRep compose_diag_weights(const OperatorRep &op, std::span<const double> weights)
{
  for (double w : weights) check_weight_value(w);
  if (const auto *d = std::get_if<DenseOp>(&op))
  {
    if (static_cast<Eigen::Index>(weights.size()) != d->matrix.cols())
      throw Error(ErrorCode::DimensionMismatch, "one weight per domain coordinate is required");
    Eigen::MatrixXd m = d->matrix;
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= weights[static_cast<std::size_t>(j)];
    return DenseOp{std::move(m), d->p, d->q};
  }
  if (const auto *pr = std::get_if<CoordProjection>(&op); pr && pr->ambient)
  {
    const auto n = static_cast<Eigen::Index>(*pr->ambient);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
      if (!pr->contains(static_cast<std::size_t>(i) + 1)) continue;
      if (rank >= weights.size())
        throw Error(ErrorCode::DimensionMismatch, "one weight per masked coordinate is required");
      m(i, i) = weights[rank++];
    }
    return DenseOp{std::move(m), pr->p, pr->p};
  }
  throw Error(ErrorCode::UnsupportedCombination,
              "explicit finite weights apply only to finite-dimensional operators");
}

}  // namespace bjlab
