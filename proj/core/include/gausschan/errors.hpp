// Copyright 2026 The gausschan Authors
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

#include <stdexcept>
#include <string>

namespace gausschan {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A noise matrix has a negative eigenvalue beyond tolerance.
struct NotPositive : Error {
    using Error::Error;
};

/// The (X, Y) pair does not satisfy the complete-positivity condition
/// y >= |tau - 1| / 2.
struct NotPhysical : Error {
    using Error::Error;
};

/// A matrix that must be full rank for the requested operation is
/// rank-deficient; the caller has to take a limit construction instead.
struct RankDeficient : Error {
    using Error::Error;
};

/// A covariance matrix violates the uncertainty bound det V >= 1/4.
struct NotAState : Error {
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// The input energy is below the additivity threshold required by a
/// closed-form capacity expression.
struct BelowThreshold : Error {
    using Error::Error;
};

/// A gate or ancilla references a mode outside the network.
struct ModeIndexOutOfRange : Error {
    using Error::Error;
};

/// Probing a network did not yield a consistent affine map on moments.
struct NotAffine : Error {
    using Error::Error;
};

/// Malformed textual input (JSON documents, matrix literals).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace gausschan
