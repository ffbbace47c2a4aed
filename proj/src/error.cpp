// Copyright 2026 The Symplectica Authors
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

#include "symplectica/error.hpp"

namespace symplectica {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveSqueeze: return "NonPositiveSqueeze";
    case ErrorCode::BadModeIndex: return "BadModeIndex";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::UnphysicalTemperature: return "UnphysicalTemperature";
    case ErrorCode::Unphysical: return "Unphysical";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::Not3Mode: return "Not3Mode";
    case ErrorCode::BadParamShape: return "BadParamShape";
    case ErrorCode::TooFewModes: return "TooFewModes";
    case ErrorCode::EnergyBelowVacuum: return "EnergyBelowVacuum";
    case ErrorCode::BadFormat: return "BadFormat";
  }
  return "Unknown";
}

}  // namespace symplectica
