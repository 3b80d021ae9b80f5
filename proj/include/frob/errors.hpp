// Copyright 2026 The frob Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frob {

/// Running maximum that keeps NaN, so a broken residual never reads as small.
inline double worst(double m, double x) noexcept { return (std::isnan(x) || x > m) ? x : m; }

enum class ErrorKind {
  MixedPoints,
  EmptyWindow,
  InsufficientWindow,
  ZeroLeadingTerm,
  NonUnitInput,
  FractionalLeakage,
  NormalizationViolated,
  CoincidentPoints,
  InadmissibleCase,
  DegeneratePoint,
  BranchAmbiguity,
  JacobianMismatch,
  EulerMismatch,
  UnsupportedLevel,
  WeightThree,
  InversionFailure,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MixedPoints: return "MixedPoints";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::InsufficientWindow: return "InsufficientWindow";
    case ErrorKind::ZeroLeadingTerm: return "ZeroLeadingTerm";
    case ErrorKind::NonUnitInput: return "NonUnitInput";
    case ErrorKind::FractionalLeakage: return "FractionalLeakage";
    case ErrorKind::NormalizationViolated: return "NormalizationViolated";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::InadmissibleCase: return "InadmissibleCase";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::JacobianMismatch: return "JacobianMismatch";
    case ErrorKind::EulerMismatch: return "EulerMismatch";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::WeightThree: return "WeightThree";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace frob
