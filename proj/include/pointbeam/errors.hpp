// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pointbeam {

enum class ErrorCode {
  InvalidParams,
  DegenerateLambda,
  DivisionNearZero,
  BoundaryTooClose,
  NonConvergentPhase,
  NoConvergence,
  DriftedOutOfBasin,
  AuditMismatch,
  NearDoubleRoot,
  DenominatorVanishes,
  ResidualTooLarge,
  DegenerateTrig,
  GridTooCoarse,
  AtEigenvalue,
  EigensolverFailure,
  IllConditionedModes,
  SamplingTooCoarse,
  EnergyUnderflow,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pointbeam
