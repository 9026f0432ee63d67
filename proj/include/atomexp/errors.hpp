// Copyright 2026 The atomexp Authors
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

#ifndef ATOMEXP_ERRORS_HPP_
#define ATOMEXP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace atomexp {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// A matrix contains NaN or Inf entries.
struct InvalidMatrix : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPositiveSemidefinite : Error {
    using Error::Error;
};

/// Iterative eigensolver failed to converge.
struct ConvergenceError : Error {
    using Error::Error;
};

/// A behavior-level operation was asked about an incompatible scenario shape.
struct ScenarioMismatch : Error {
    using Error::Error;
};

/// A randomized spectral split never separated within the retry budget.
struct RetriesExhausted : Error {
    using Error::Error;
};

/// Block factorization left a residual above threshold.
struct FactorizationResidual : Error {
    using Error::Error;
};

/// A conjugated operator is too far from the required M (x) I / I (x) M form.
struct ComponentExtractionResidual : Error {
    using Error::Error;
};

/// A basis handed in as a von Neumann algebra violates the closure invariants.
struct InvalidAlgebra : Error {
    using Error::Error;
};

/// The span(F) <= range(Phi) <= comm(E) precondition does not hold.
struct SandwichViolation : Error {
    using Error::Error;
};

/// Structural problem in a model (shape/dimension), found before numerics.
struct ModelStructureError : Error {
    using Error::Error;
};

/// A model failed numerical validation where a passing model is required.
struct ValidationFailed : Error {
    using Error::Error;
};

/// An internal identity that must hold by construction failed to hold.
struct InternalConsistencyError : Error {
    using Error::Error;
};

/// Malformed JSON input (shape or field errors, not syntax).
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace atomexp

#endif  // ATOMEXP_ERRORS_HPP_
