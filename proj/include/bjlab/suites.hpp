// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_SUITES_HPP_
#define BJLAB_SUITES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bjlab/bsemrl.hpp"
#include "bjlab/norms.hpp"

namespace bjlab
{

/// One plot-ready row: what was varied, what was measured, what it is
/// compared against.
struct DetailRow
{
  std::string case_id;
  std::string parameter;
  double measured = 0.0;
  double bound = 0.0;
  bool ok = true;
  bool unknown = false;
  std::string note;
};

struct SuiteReport
{
  std::string suite;
  std::string statement;
  std::vector<std::string> assumptions;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::size_t unknowns = 0;
  std::vector<DetailRow> details;
};

struct SuiteConfig
{
  std::uint64_t seed = 7;
  /// Dimension bound for mask suites, case count for random suites.
  std::optional<std::size_t> n;
  /// Exponents for the mask suites; empty means {1, 1.5, 2, 3}.
  std::vector<double> p_values;
  double tol = kDefaultTol;
  /// equiv-hilbert only: add a head whose top gap is 1e-12.
  bool adversarial = false;
  NormOptions norm;
};

const std::vector<std::string> &suite_names();

/// Throws InvalidParameters for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteConfig &config = {});

enum class Space
{
  Hilbert,
  Lp
};

SuiteReport equivalence_suite(Space space, std::size_t count, std::uint64_t seed, bool adversarial = false,
                              const NormOptions &opts = {});

/// Closed-form sequence from one of the four families with sup <= 2 and up
/// to two overrides.
SequenceSpec random_sequence(std::mt19937_64 &gen);

/// Head of size 1..4 with entries uniform in [-1, 1] and a random tail.
StructuredOp random_structured(std::mt19937_64 &gen, double p);

/// All nonempty proper subsets of {1..n} (all subsets when `include_full`).
std::vector<FiniteMask> all_masks(std::size_t n, bool include_full = false);

}  // namespace bjlab

#endif  // BJLAB_SUITES_HPP_
