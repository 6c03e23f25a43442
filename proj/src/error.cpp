// Copyright 2026 The gbig Authors.
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

#include "gbig/error.hpp"

namespace gbig {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kPathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorCode::kIsolatedNode: return "IsolatedNode";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kAsymmetricEdge: return "AsymmetricEdge";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kOverlappingMasks: return "OverlappingMasks";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace gbig
