// Copyright 2026-present the free-edge project
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

#include "freeedge/error.hpp"

namespace freeedge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::SingularZ: return "SingularZ";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::SeriesDiverges: return "SeriesDiverges";
    case ErrorCode::BracketNotFound: return "BracketNotFound";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace freeedge
