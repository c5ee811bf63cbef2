// Copyright 2026 The ssbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ssbe {

/// Stable error identifiers. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
    kInvalidArgument = 2,
    kDimensionMismatch = 3,
    kZeroGenerator = 4,
    kResourceLimit = 5,
    kScaleMismatch = 6,
    kIllConditioned = 7,
    kSchemaViolation = 8,
    kFileNotFound = 9,
    kBoundViolation = 10,
};

inline const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "INVALID_ARGUMENT";
        case ErrorCode::kDimensionMismatch:
            return "DIMENSION_MISMATCH";
        case ErrorCode::kZeroGenerator:
            return "ZERO_GENERATOR";
        case ErrorCode::kResourceLimit:
            return "RESOURCE_LIMIT";
        case ErrorCode::kScaleMismatch:
            return "SCALE_MISMATCH";
        case ErrorCode::kIllConditioned:
            return "ILL_CONDITIONED";
        case ErrorCode::kSchemaViolation:
            return "SCHEMA_VIOLATION";
        case ErrorCode::kFileNotFound:
            return "FILE_NOT_FOUND";
        case ErrorCode::kBoundViolation:
            return "BOUND_VIOLATION";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(message), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }

    /// Offending element index, when the error refers to one (e.g. the zero generator entry).
    std::optional<std::size_t> index() const noexcept { return index_; }

   private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

inline Error zero_generator(std::size_t index) {
    return Error(ErrorCode::kZeroGenerator,
                 "generator u has a zero entry at index " + std::to_string(index) +
                     "; the matrix has no triangular factorization",
                 index);
}

}  // namespace ssbe
