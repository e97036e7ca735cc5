// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "bjlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bjlab/error.hpp"

namespace bjlab
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string &what)
{
  if (!ok) throw Error(ErrorCode::InvalidParameters, what);
}

bool finite(double v) { return std::isfinite(v); }

Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

bool ties(double a, double b, double rel)
{
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

double Interval::abs_max() const { return std::max(std::abs(lo), std::abs(hi)); }

SequenceSpec::SequenceSpec(Family family, std::vector<std::pair<std::size_t, double>> overrides)
  : family_(std::move(family))
{
  std::visit(overloaded{
               [](const Constant &f) { require(finite(f.c), "constant value must be finite"); },
               [](const Geometric &f)
               {
                 require(finite(f.a) && finite(f.r), "geometric parameters must be finite");
                 require(std::abs(f.r) < 1.0, "geometric ratio needs |r| < 1");
               },
               [](const Power &f)
               {
                 require(finite(f.a) && finite(f.b) && finite(f.s),
                         "power parameters must be finite");
                 require(f.s > 0.0, "power exponent needs s > 0");
               },
               [](const Periodic &f)
               {
                 require(!f.pattern.empty(), "periodic pattern must be nonempty");
                 for (double v : f.pattern) require(finite(v), "pattern entries must be finite");
               }},
             family_);
  for (const auto &[index, value] : overrides)
  {
    require(index >= 1, "override indices start at 1");
    require(finite(value), "override values must be finite");
    overrides_[index] = value;
  }
}

SequenceSpec SequenceSpec::with_override(std::size_t index, double value) const
{
  SequenceSpec s(*this);
  require(index >= 1 && finite(value), "invalid override");
  s.overrides_[index] = value;
  return s;
}

double SequenceSpec::family_value(std::size_t n) const
{
  return std::visit(overloaded{
                      [](const Constant &f) { return f.c; },
                      [n](const Geometric &f)
                      { return f.a * std::pow(f.r, static_cast<double>(n)); },
                      [n](const Power &f)
                      { return f.a + f.b * std::pow(static_cast<double>(n), -f.s); },
                      [n](const Periodic &f) { return f.pattern[(n - 1) % f.pattern.size()]; }},
                    family_);
}

double SequenceSpec::operator()(std::size_t n) const
{
  if (auto it = overrides_.find(n); it != overrides_.end()) return it->second;
  return family_value(n);
}

std::size_t SequenceSpec::period() const
{
  if (const auto *f = std::get_if<Periodic>(&family_)) return f->pattern.size();
  return 1;
}

double SequenceSpec::limit(std::size_t residue) const
{
  return std::visit(overloaded{[](const Constant &f) { return f.c; },
                               [](const Geometric &) { return 0.0; },
                               [](const Power &f) { return f.a; },
                               [residue](const Periodic &f)
                               { return f.pattern[residue % f.pattern.size()]; }},
                    family_);
}

double SequenceSpec::limsup_abs() const
{
  double best = 0.0;
  for (std::size_t r = 0; r < period(); ++r) best = std::max(best, std::abs(limit(r)));
  return best;
}

std::size_t SequenceSpec::last_override() const
{
  return overrides_.empty() ? 0 : overrides_.rbegin()->first;
}

SeqAnalytics SequenceSpec::family_analytics() const
{
  // First index the family rule is actually visible at.
  std::size_t n0 = 1;
  while (overrides_.count(n0)) ++n0;

  SeqAnalytics out;
  out.limsup_abs = limsup_abs();
  std::visit(overloaded{[&](const Constant &f)
                        {
                          out.sup_abs = std::abs(f.c);
                          out.attainment = Attainment::AttainedInfinitely;
                        },
                        [&](const Geometric &f)
                        {
                          if (f.a == 0.0 || f.r == 0.0)
                          {
                            out.sup_abs = 0.0;
                            out.attainment = Attainment::AttainedInfinitely;
                            return;
                          }
                          // |a| |r|^n is strictly decreasing.
                          out.sup_abs = std::abs(family_value(n0));
                          out.attainment = Attainment::AttainedFinitely;
                          out.indices = {n0};
                        },
                        [&](const Power &f)
                        {
                          if (f.b == 0.0)
                          {
                            out.sup_abs = std::abs(f.a);
                            out.attainment = Attainment::AttainedInfinitely;
                            return;
                          }
                          // k_n moves monotonically towards a, so |k_n| can only
                          // exceed |a| at the start of the visible range.
                          const double first = std::abs(family_value(n0));
                          const double lim = std::abs(f.a);
                          if (first > lim || ties(first, lim))
                          {
                            out.sup_abs = std::max(first, lim);
                            out.attainment = Attainment::AttainedFinitely;
                            out.indices = {n0};
                          }
                          else
                          {
                            out.sup_abs = lim;
                            out.attainment = Attainment::NotAttained;
                          }
                        },
                        [&](const Periodic &f)
                        {
                          for (double v : f.pattern) out.sup_abs = std::max(out.sup_abs, std::abs(v));
                          out.attainment = Attainment::AttainedInfinitely;
                        }},
             family_);
  return out;
}

SeqAnalytics SequenceSpec::analytics() const
{
  const SeqAnalytics fam = family_analytics();
  double sup = fam.sup_abs;
  for (const auto &[index, value] : overrides_) sup = std::max(sup, std::abs(value));

  SeqAnalytics out;
  out.sup_abs = sup;
  out.limsup_abs = fam.limsup_abs;
  bool infinite = false;
  std::vector<std::size_t> idx;
  if (ties(fam.sup_abs, sup))
  {
    if (fam.attainment == Attainment::AttainedInfinitely) infinite = true;
    if (fam.attainment == Attainment::AttainedFinitely) idx = fam.indices;
  }
  for (const auto &[index, value] : overrides_)
  {
    if (ties(std::abs(value), sup)) idx.push_back(index);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (infinite)
    out.attainment = Attainment::AttainedInfinitely;
  else if (!idx.empty())
  {
    out.attainment = Attainment::AttainedFinitely;
    out.indices = std::move(idx);
  }
  else
    out.attainment = Attainment::NotAttained;
  return out;
}

SeqAnalytics seq_analytics(const SequenceSpec &s) { return s.analytics(); }

Interval SequenceSpec::tail_range(std::size_t n0, std::size_t stride) const
{
  return std::visit(overloaded{[](const Constant &f) { return Interval{f.c, f.c}; },
                               [&](const Geometric &f)
                               {
                                 const double v = family_value(n0);
                                 if (f.r >= 0.0) return hull(v, 0.0);
                                 return Interval{-std::abs(v), std::abs(v)};
                               },
                               [&](const Power &f) { return hull(family_value(n0), f.a); },
                               [&](const Periodic &f)
                               {
                                 const std::size_t L = f.pattern.size();
                                 if (stride % L == 0)
                                 {
                                   const double v = f.pattern[(n0 - 1) % L];
                                   return Interval{v, v};
                                 }
                                 auto [lo, hi] = std::minmax_element(f.pattern.begin(), f.pattern.end());
                                 return Interval{*lo, *hi};
                               }},
                    family_);
}

double SequenceSpec::deviation_bound(double n) const
{
  return std::visit(overloaded{[](const Constant &) { return 0.0; },
                               [n](const Geometric &f)
                               { return std::abs(f.a) * std::pow(std::abs(f.r), n); },
                               [n](const Power &f) { return std::abs(f.b) * std::pow(n, -f.s); },
                               [](const Periodic &) { return 0.0; }},
                    family_);
}

std::optional<double> SequenceSpec::settle_index(double eps) const
{
  double n = std::visit(overloaded{[](const Constant &) { return 1.0; },
                                   [eps](const Geometric &f)
                                   {
                                     if (std::abs(f.a) <= eps || f.r == 0.0) return 1.0;
                                     return std::ceil(std::log(eps / std::abs(f.a)) /
                                                      std::log(std::abs(f.r)));
                                   },
                                   [eps](const Power &f)
                                   {
                                     if (std::abs(f.b) <= eps) return 1.0;
                                     return std::ceil(std::pow(std::abs(f.b) / eps, 1.0 / f.s));
                                   },
                                   [](const Periodic &) { return 1.0; }},
                        family_);
  n = std::max({n, 1.0, static_cast<double>(last_override() + 1)});
  if (!std::isfinite(n)) return std::nullopt;
  return n;
}

std::vector<std::size_t> SequenceSpec::attaining_indices(std::size_t count) const
{
  const SeqAnalytics a = analytics();
  std::vector<std::size_t> out;
  if (a.attainment == Attainment::NotAttained) return out;
  if (a.attainment == Attainment::AttainedFinitely)
  {
    for (std::size_t i = 0; i < a.indices.size() && out.size() < count; ++i)
      out.push_back(a.indices[i]);
    return out;
  }
  for (std::size_t n = 1; out.size() < count; ++n)
  {
    if (ties(std::abs((*this)(n)), a.sup_abs)) out.push_back(n);
  }
  return out;
}

bool SequenceSpec::is_zero_one() const
{
  auto zo = [](double v) { return v == 0.0 || v == 1.0; };
  const bool fam = std::visit(overloaded{[&](const Constant &f) { return zo(f.c); },
                                         [](const Geometric &f) { return f.a == 0.0; },
                                         [&](const Power &f) { return f.b == 0.0 && zo(f.a); },
                                         [&](const Periodic &f)
                                         { return std::all_of(f.pattern.begin(), f.pattern.end(), zo); }},
                              family_);
  return fam && std::all_of(overrides_.begin(), overrides_.end(),
                            [&](const auto &kv) { return zo(kv.second); });
}

std::size_t SequenceSpec::count_ones(std::size_t bound) const
{
  std::size_t fam = std::visit(overloaded{[bound](const Constant &f)
                                          { return f.c == 1.0 ? bound : std::size_t{0}; },
                                          [](const Geometric &) { return std::size_t{0}; },
                                          [bound](const Power &f)
                                          { return f.a == 1.0 ? bound : std::size_t{0}; },
                                          [bound](const Periodic &f)
                                          {
                                            const std::size_t L = f.pattern.size();
                                            std::size_t per = 0, part = 0;
                                            for (std::size_t i = 0; i < L; ++i)
                                            {
                                              if (f.pattern[i] == 1.0)
                                              {
                                                ++per;
                                                if (i < bound % L) ++part;
                                              }
                                            }
                                            return per * (bound / L) + part;
                                          }},
                               family_);
  long long adjust = 0;
  for (const auto &[index, value] : overrides_)
  {
    if (index > bound) break;
    adjust += static_cast<long long>(value == 1.0) - static_cast<long long>(family_value(index) == 1.0);
  }
  return static_cast<std::size_t>(static_cast<long long>(fam) + adjust);
}

bool SequenceSpec::decays() const
{
  return std::visit(overloaded{[](const Constant &f) { return f.c == 0.0; },
                               [](const Geometric &) { return true; },
                               [](const Power &f) { return f.a == 0.0; },
                               [](const Periodic &f)
                               {
                                 return std::all_of(f.pattern.begin(), f.pattern.end(),
                                                    [](double v) { return v == 0.0; });
                               }},
                    family_);
}

SequenceSpec SequenceSpec::scaled(double alpha) const
{
  Family fam = std::visit(overloaded{[alpha](const Constant &f) -> Family { return Constant{alpha * f.c}; },
                                     [alpha](const Geometric &f) -> Family { return Geometric{alpha * f.a, f.r}; },
                                     [alpha](const Power &f) -> Family { return Power{alpha * f.a, alpha * f.b, f.s}; },
                                     [alpha](const Periodic &f) -> Family
                                     {
                                       std::vector<double> p(f.pattern);
                                       for (double &v : p) v *= alpha;
                                       return Periodic{std::move(p)};
                                     }},
                          family_);
  std::vector<std::pair<std::size_t, double>> ov;
  for (const auto &[index, value] : overrides_) ov.emplace_back(index, alpha * value);
  return SequenceSpec(std::move(fam), std::move(ov));
}

}  // namespace bjlab
