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

#ifndef ATOMEXP_CONDEXP_HPP_
#define ATOMEXP_CONDEXP_HPP_

#include "atomexp/scenario.hpp"
#include "atomexp/vnalg.hpp"

namespace atomexp {

/// The trace-preserving conditional expectation onto a unital *-subalgebra,
/// realized as the Hilbert-Schmidt orthogonal projection
///     Phi(T) = sum_j B_j tr(B_j^dagger T)
/// over the algebra's orthonormal basis. For an algebra target this is
/// positive, completely positive, unital, idempotent, and satisfies the
/// bimodule property. Weak-star continuity is automatic at finite dimension.
///
/// The predual map Phi^* (defined by <Phi^*(mu), T> = <mu, Phi(T)>) is the
/// same linear map because Phi is symmetric in the trace pairing; it is kept
/// as a separately named operation, verified against its defining identity.
class ConditionalExpectation {
  public:
    [[nodiscard]] const VNAlgebra& target() const { return target_; }
    [[nodiscard]] Eigen::Index dim() const { return target_.dim; }

    [[nodiscard]] CMatrix apply(const CMatrix& t) const;
    [[nodiscard]] CMatrix predual_apply(const CMatrix& mu) const;

    /// Choi matrix sum_j conj(B_j) (x) B_j; PSD iff Phi is CP.
    [[nodiscard]] CMatrix choi_matrix() const;

    friend ConditionalExpectation expectation_onto(const VNAlgebra& alg,
                                                   const TolerancePolicy& tol,
                                                   bool check_cp);

  private:
    explicit ConditionalExpectation(VNAlgebra target)
        : target_(std::move(target)) {}

    VNAlgebra target_;
};

/// Builds Phi onto alg after checking the VNAlgebra closure invariants
/// (InvalidAlgebra on failure: the HS projection onto a non-algebra need not
/// be positive). check_cp additionally verifies the Choi matrix is PSD;
/// the O(n^4) cost keeps it out of the default path.
ConditionalExpectation expectation_onto(const VNAlgebra& alg,
                                        const TolerancePolicy& tol = {},
                                        bool check_cp = false);

struct SandwichReport {
    double span_residual = 0.0;        // worst F projection distance (HS)
    double commutator_residual = 0.0;  // worst ||[R, E]||_max over range basis
    bool pass = false;
};

/// Sandwich hypothesis check: span(F^y_b) inside range(Phi) inside
/// comm(E^x_a), with alice supplying the E family and bob the F family.
SandwichReport verify_sandwich(const ConditionalExpectation& phi,
                               const POVMFamily& alice, const POVMFamily& bob,
                               const TolerancePolicy& tol = {});

}  // namespace atomexp

#endif  // ATOMEXP_CONDEXP_HPP_
