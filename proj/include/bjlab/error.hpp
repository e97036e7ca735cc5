// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BJLAB_ERROR_HPP_
#define BJLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bjlab
{

enum class ErrorCode
{
  UnsupportedExponent,
  DegenerateDirection,
  DegenerateInput,
  DimensionMismatch,
  InvalidParameters,
  InvalidWitnessWeights,
  UnsupportedCombination,
  NotOrthogonalPair,
  InvalidPair,
  InvalidProjection,
  PreconditionFailed,
  Schema,
  NonConvergence
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::UnsupportedExponent: return "unsupported-exponent";
    case ErrorCode::DegenerateDirection: return "degenerate-direction";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidParameters: return "invalid-parameters";
    case ErrorCode::InvalidWitnessWeights: return "invalid-witness-weights";
    case ErrorCode::UnsupportedCombination: return "unsupported-combination";
    case ErrorCode::NotOrthogonalPair: return "not-orthogonal-pair";
    case ErrorCode::InvalidPair: return "invalid-pair";
    case ErrorCode::InvalidProjection: return "invalid-projection";
    case ErrorCode::PreconditionFailed: return "precondition-failed";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::NonConvergence: return "non-convergence";
  }
  return "unknown";
}

}  // namespace bjlab

#endif  // BJLAB_ERROR_HPP_
