// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/errors.hpp"

#include <omp.h>

#include "pointbeam/parallel.hpp"

namespace pointbeam {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::DivisionNearZero: return "DivisionNearZero";
    case ErrorCode::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorCode::NonConvergentPhase: return "NonConvergentPhase";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DriftedOutOfBasin: return "DriftedOutOfBasin";
    case ErrorCode::AuditMismatch: return "AuditMismatch";
    case ErrorCode::NearDoubleRoot: return "NearDoubleRoot";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::DegenerateTrig: return "DegenerateTrig";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::AtEigenvalue: return "AtEigenvalue";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::IllConditionedModes: return "IllConditionedModes";
    case ErrorCode::SamplingTooCoarse: return "SamplingTooCoarse";
    case ErrorCode::EnergyUnderflow: return "EnergyUnderflow";
  }
  return "Unknown";
}

void set_thread_count(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

}  // namespace pointbeam
