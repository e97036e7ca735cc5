// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bjlab
{

namespace
{

Interval mul(const Interval &a, const Interval &b)
{
  const double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

constexpr std::size_t kRankScanCap = std::size_t{1} << 22;

}  // namespace

std::size_t Factor::mapped_index(std::size_t n) const
{
  if (rank_mask) return rank_mask->count_ones(n + shift);
  return n + shift;
}

double Factor::operator()(std::size_t n) const
{
  const std::size_t j = mapped_index(n);
  return j == 0 ? 0.0 : seq(j);
}

Diagonal::Diagonal(SequenceSpec s) { terms_.push_back(Term{1.0, {Factor{std::move(s), 0, {}}}}); }

double Diagonal::operator()(std::size_t n) const
{
  double acc = 0.0;
  for (const Term &t : terms_)
  {
    double prod = t.coef;
    for (const Factor &f : t.factors)
    {
      if (prod == 0.0) break;
      prod *= f(n);
    }
    acc += prod;
  }
  return acc;
}

std::optional<SequenceSpec> Diagonal::as_sequence() const
{
  if (terms_.size() != 1 || terms_[0].factors.size() != 1) return std::nullopt;
  const Term &t = terms_[0];
  const Factor &f = t.factors[0];
  if (f.shift != 0 || f.rank_mask) return std::nullopt;
  if (t.coef == 1.0) return f.seq;
  return f.seq.scaled(t.coef);
}

std::size_t Diagonal::period() const
{
  std::size_t L = 1;
  for (const Term &t : terms_)
    for (const Factor &f : t.factors)
      if (!f.rank_mask) L = std::lcm(L, f.seq.period());
  return L;
}

double Diagonal::limit(std::size_t residue) const
{
  double acc = 0.0;
  for (const Term &t : terms_)
  {
    double prod = t.coef;
    for (const Factor &f : t.factors)
    {
      prod *= f.rank_mask ? 0.0 : f.seq.limit((residue + f.shift) % f.seq.period());
    }
    acc += prod;
  }
  return acc;
}

double Diagonal::limsup_abs() const
{
  double best = 0.0;
  const std::size_t L = period();
  for (std::size_t r = 0; r < L; ++r) best = std::max(best, std::abs(limit(r)));
  return best;
}

std::size_t Diagonal::settled_from() const
{
  // First index past which no factor sees an override.
  std::size_t n = 1;
  for (const Term &t : terms_)
  {
    for (const Factor &f : t.factors)
    {
      const std::size_t last = f.seq.last_override();
      if (last == 0) continue;
      if (!f.rank_mask)
      {
        if (last >= f.shift) n = std::max(n, last - f.shift + 1);
        continue;
      }
      std::size_t m = 1;
      while (m < kRankScanCap && f.mapped_index(m) <= last) m *= 2;
      n = std::max(n, m);
    }
  }
  return n;
}

Interval Diagonal::class_range(std::size_t n0, std::size_t stride) const
{
  Interval acc{0.0, 0.0};
  for (const Term &t : terms_)
  {
    Interval prod{t.coef, t.coef};
    for (const Factor &f : t.factors)
    {
      Interval r;
      if (f.rank_mask)
      {
        const std::size_t j0 = f.mapped_index(n0);
        r = f.seq.tail_range(std::max<std::size_t>(j0, 1), 1);
        r = {std::min(r.lo, 0.0), std::max(r.hi, 0.0)};
      }
      else
      {
        r = f.seq.tail_range(n0 + f.shift, stride);
      }
      prod = mul(prod, r);
    }
    acc = {acc.lo + prod.lo, acc.hi + prod.hi};
  }
  return acc;
}

TailSup Diagonal::sup_analysis(std::size_t max_scan) const
{
  TailSup out;
  if (auto s = as_sequence())
  {
    const SeqAnalytics a = s->analytics();
    out.sup_abs = a.sup_abs;
    out.limsup_abs = a.limsup_abs;
    out.attainment = a.attainment;
    out.indices = a.indices;
    return out;
  }
  if (terms_.empty())
  {
    out.attainment = Attainment::AttainedInfinitely;
    return out;
  }

  const std::size_t L = period();
  const double limsup = limsup_abs();
  out.limsup_abs = limsup;
  std::size_t N = std::max({settled_from() + 1, std::size_t{16}, 2 * L});

  double best = 0.0;
  std::size_t argmax = 0;
  std::size_t scanned = 0;  // values 1..scanned already examined
  for (;;)
  {
    for (std::size_t n = scanned + 1; n < N; ++n)
    {
      const double v = std::abs((*this)(n));
      if (v > best || argmax == 0)
      {
        best = v;
        argmax = n;
      }
    }
    scanned = N - 1;

    double upper = 0.0;
    bool degenerate_at_sup = false;
    const double lower = std::max(best, limsup);
    for (std::size_t r = 0; r < L; ++r)
    {
      std::size_t n0 = N + ((r + L - (N - 1) % L) % L);
      const Interval iv = class_range(n0, L);
      upper = std::max(upper, iv.abs_max());
      if (iv.lo == iv.hi && ties(std::abs(iv.lo), lower)) degenerate_at_sup = true;
    }

    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(lower, 1e-300);
    out.sup_abs = lower;
    if (upper <= lower + slack)
    {
      out.certified = true;
      out.residual = 0.0;
      out.attainment_known = true;
      if (degenerate_at_sup)
        out.attainment = Attainment::AttainedInfinitely;
      else if (argmax != 0 && ties(best, lower))
      {
        out.attainment = Attainment::AttainedFinitely;
        for (std::size_t n = 1; n < N; ++n)
          if (ties(std::abs((*this)(n)), lower)) out.indices.push_back(n);
      }
      else
        out.attainment = Attainment::NotAttained;
      return out;
    }
    if (N >= max_scan)
    {
      out.certified = false;
      out.residual = upper - lower;
      out.attainment_known = false;
      out.attainment = Attainment::NotAttained;
      return out;
    }
    N = std::min(N * 4, max_scan);
  }
}

Diagonal Diagonal::shifted(std::size_t delta) const
{
  Diagonal d(*this);
  for (Term &t : d.terms_)
    for (Factor &f : t.factors) f.shift += delta;
  return d;
}

Diagonal Diagonal::scaled(double alpha) const
{
  Diagonal d(*this);
  for (Term &t : d.terms_) t.coef *= alpha;
  return d;
}

Diagonal Diagonal::plus(const Diagonal &other, double beta) const
{
  Diagonal d(*this);
  for (const Term &t : other.terms_)
  {
    Term u = t;
    u.coef *= beta;
    d.terms_.push_back(std::move(u));
  }
  return d;
}

Diagonal Diagonal::times(const Factor &factor) const
{
  Diagonal d(*this);
  for (Term &t : d.terms_) t.factors.push_back(factor);
  return d;
}

}  // namespace bjlab
