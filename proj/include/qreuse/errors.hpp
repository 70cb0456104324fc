// Copyright 2026 The qreuse authors
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

#include <stdexcept>

namespace qreuse {

/// Composite dimension would exceed the configured cap.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched register/operator dimensions or an invalid register index.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operator failed to preserve the norm of the state it was applied to.
struct NonIsometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition of an operation.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A state (or branch) is degenerate in a way that makes the operation
/// meaningless, e.g. projecting onto a zero-probability outcome.
struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure to read or write an artifact.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad command line or config-file input.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qreuse
