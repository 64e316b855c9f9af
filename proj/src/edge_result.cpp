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

#include "freeedge/edge_result.hpp"

namespace freeedge {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Variational: return "variational";
    case Method::Cauchy: return "cauchy";
    case Method::Dilation: return "dilation";
    case Method::Diagonal: return "diagonal";
  }
  return "unknown";
}

std::string_view to_string(Side side) { return side == Side::Upper ? "upper" : "lower"; }

}  // namespace freeedge
