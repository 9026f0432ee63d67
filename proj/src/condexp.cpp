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

#include "atomexp/condexp.hpp"

#include <algorithm>
#include <string>

namespace atomexp {

CMatrix ConditionalExpectation::apply(const CMatrix& t) const {
    if (t.rows() != dim() || t.cols() != dim()) {
        throw DimensionMismatch("ConditionalExpectation::apply: input is " +
                                std::to_string(t.rows()) + "x" +
                                std::to_string(t.cols()) + ", expected " +
                                std::to_string(dim()));
    }
    return target_.project(t);
}

CMatrix ConditionalExpectation::predual_apply(const CMatrix& mu) const {
    // Phi is symmetric in the trace pairing, so the predual acts by the
    // same projection; see the tests for the defining-identity check.
    return apply(mu);
}

CMatrix ConditionalExpectation::choi_matrix() const {
    const Eigen::Index n = dim();
    CMatrix choi = CMatrix::Zero(n * n, n * n);
    for (const CMatrix& b : target_.basis) {
        choi += kron(b.conjugate().eval(), b);
    }
    return choi;
}

ConditionalExpectation expectation_onto(const VNAlgebra& alg,
                                        const TolerancePolicy& tol,
                                        bool check_cp) {
    const AlgebraResiduals res = validate_algebra(alg, tol);
    if (!res.pass) {
        throw InvalidAlgebra(
            "expectation_onto: target violates algebra invariants "
            "(orthonormality=" +
            std::to_string(res.orthonormality) +
            ", star=" + std::to_string(res.star_closure) +
            ", mult=" + std::to_string(res.mult_closure) +
            ", identity=" + std::to_string(res.identity) + ")");
    }
    ConditionalExpectation phi(alg);
    if (check_cp) {
        const HermitianMatrix choi(phi.choi_matrix(), tol.eps_herm);
        const double min_eig = min_eigenvalue(choi);
        if (min_eig < -tol.eps_psd) {
            throw NotPositiveSemidefinite(
                "expectation_onto: Choi matrix eigenvalue " +
                std::to_string(min_eig));
        }
    }
    return phi;
}

SandwichReport verify_sandwich(const ConditionalExpectation& phi,
                               const POVMFamily& alice, const POVMFamily& bob,
                               const TolerancePolicy& tol) {
    SandwichReport report;
    for (const CMatrix& f : povm_elements(bob)) {
        report.span_residual = std::max(report.span_residual,
                                        phi.target().membership_residual(f));
    }
    for (const CMatrix& r : phi.target().basis) {
        for (const CMatrix& e : povm_elements(alice)) {
            report.commutator_residual =
                std::max(report.commutator_residual,
                         max_abs(CMatrix(r * e - e * r)));
        }
    }
    report.pass = report.span_residual <= tol.eps_eq &&
                  report.commutator_residual <= tol.eps_eq;
    return report;
}

}  // namespace atomexp
