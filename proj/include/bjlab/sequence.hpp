// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_SEQUENCE_HPP_
#define BJLAB_SEQUENCE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace bjlab
{

/// Relative tolerance used whenever two sequence values are compared for a tie.
inline constexpr double kTieTol = 1e-12;

bool ties(double a, double b, double rel = kTieTol);

struct Constant
{
  double c;
};
/// k_n = a * r^n, |r| < 1.
struct Geometric
{
  double a, r;
};
/// k_n = a + b * n^(-s), s > 0.
struct Power
{
  double a, b, s;
};
/// k_n = pattern[(n - 1) mod L].
struct Periodic
{
  std::vector<double> pattern;
};

using Family = std::variant<Constant, Geometric, Power, Periodic>;

enum class Attainment
{
  AttainedFinitely,
  AttainedInfinitely,
  NotAttained
};

struct SeqAnalytics
{
  double sup_abs = 0.0;
  double limsup_abs = 0.0;
  Attainment attainment = Attainment::NotAttained;
  std::vector<std::size_t> indices;  // attaining indices when finite
};

struct Interval
{
  double lo, hi;
  double abs_max() const;
};

/// Closed-form real sequence (k_n)_{n>=1}: a family rule followed by finitely
/// many point overrides.
class SequenceSpec
{
public:
  explicit SequenceSpec(Family family, std::vector<std::pair<std::size_t, double>> overrides = {});

  static SequenceSpec constant(double c) { return SequenceSpec(Constant{c}); }
  static SequenceSpec geometric(double a, double r) { return SequenceSpec(Geometric{a, r}); }
  static SequenceSpec power(double a, double b, double s) { return SequenceSpec(Power{a, b, s}); }
  static SequenceSpec periodic(std::vector<double> pattern)
  {
    return SequenceSpec(Periodic{std::move(pattern)});
  }

  const Family &family() const noexcept { return family_; }
  const std::map<std::size_t, double> &overrides() const noexcept { return overrides_; }
  SequenceSpec with_override(std::size_t index, double value) const;

  double operator()(std::size_t n) const;
  double family_value(std::size_t n) const;

  SeqAnalytics analytics() const;

  /// Period of the family rule (1 unless periodic).
  std::size_t period() const;
  /// Limit along the residue class n = residue + 1 (mod period).
  double limit(std::size_t residue) const;
  double limsup_abs() const;
  std::size_t last_override() const;

  /// Hull of the family values at n0, n0 + stride, n0 + 2 stride, ... together
  /// with their limit. Overrides are ignored.
  Interval tail_range(std::size_t n0, std::size_t stride) const;
  /// Smallest N such that every family value with n >= N lies within `eps` of
  /// its class limit, or nullopt if that index is not representable.
  std::optional<double> settle_index(double eps) const;
  /// sup_{n >= N} |family(n) - limit|; evaluated on real N so it works past
  /// the range of size_t.
  double deviation_bound(double n) const;

  /// First `count` indices where |k_n| equals the supremum (fewer if the
  /// attainment set is finite and smaller).
  std::vector<std::size_t> attaining_indices(std::size_t count) const;
  /// Number of n <= bound with k_n == 1 (0/1 masks only).
  std::size_t count_ones(std::size_t bound) const;
  bool is_zero_one() const;
  /// True when the family rule tends to zero on every residue class.
  bool decays() const;

  SequenceSpec scaled(double alpha) const;

private:
  SeqAnalytics family_analytics() const;

  Family family_;
  std::map<std::size_t, double> overrides_;
};

SeqAnalytics seq_analytics(const SequenceSpec &s);

}  // namespace bjlab

#endif  // BJLAB_SEQUENCE_HPP_
