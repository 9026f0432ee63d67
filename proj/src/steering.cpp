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

#include "atomexp/steering.hpp"

#include <algorithm>
#include <string>

namespace atomexp {

SteeringAssemblage build_assemblage(const BipartiteModel& m,
                                    const ConditionalExpectation& phi,
                                    const TolerancePolicy& tol) {
    const ValidationReport validation = validate_model(m, tol);
    if (!validation.pass) {
        throw ValidationFailed("build_assemblage: model failed validation");
    }
    if (phi.dim() != m.dim) {
        throw DimensionMismatch(
            "build_assemblage: expectation dimension mismatch");
    }
    const SandwichReport sandwich = verify_sandwich(phi, m.alice, m.bob, tol);
    if (!sandwich.pass) {
        throw SandwichViolation(
            "build_assemblage: span(F) <= range(Phi) <= comm(E) fails "
            "(span_residual=" +
            std::to_string(sandwich.span_residual) + ", commutator_residual=" +
            std::to_string(sandwich.commutator_residual) + ")");
    }

    const CMatrix& rho = m.state.matrix.matrix();
    SteeringAssemblage out;
    out.scenario = m.scenario;
    out.barycenter = HermitianMatrix(phi.predual_apply(rho), tol.eps_herm);

    const double trace_error =
        std::abs(out.barycenter.matrix().trace().real() - 1.0);
    if (trace_error > tol.eps_eq) {
        throw InternalConsistencyError(
            "build_assemblage: barycenter trace off by " +
            std::to_string(trace_error));
    }

    for (size_t x = 0; x < m.scenario.alice.size(); ++x) {
        std::vector<HermitianMatrix> row;
        CMatrix sum = CMatrix::Zero(m.dim, m.dim);
        for (int a = 0; a < m.scenario.alice[x].outcomes; ++a) {
            const CMatrix root =
                psd_sqrt(m.alice.elements[x][a], tol).matrix();
            const CMatrix member =
                phi.predual_apply(root * rho * root);
            // Phi is positive, so each member must come out PSD.
            const HermitianMatrix sigma(member, tol.eps_herm);
            const double min_eig = min_eigenvalue(sigma);
            if (min_eig < -tol.eps_psd) {
                throw NotPositiveSemidefinite(
                    "build_assemblage: member eigenvalue " +
                    std::to_string(min_eig));
            }
            sum += sigma.matrix();
            row.push_back(sigma);
        }
        // The construction forces sum_a sigma^x_a = Phi^*(rho) for every x.
        const double dev = max_abs(sum - out.barycenter.matrix());
        if (dev > tol.eps_eq) {
            throw InternalConsistencyError(
                "build_assemblage: sum over outcomes deviates from "
                "barycenter by " +
                std::to_string(dev) + " at setting " +
                m.scenario.alice[x].label);
        }
        out.members.push_back(std::move(row));
    }
    return out;
}

double verify_x_independence(const SteeringAssemblage& s) {
    double worst = 0.0;
    for (const auto& row : s.members) {
        CMatrix sum = CMatrix::Zero(s.barycenter.dim(), s.barycenter.dim());
        for (const HermitianMatrix& sigma : row) sum += sigma.matrix();
        worst = std::max(worst, max_abs(sum - s.barycenter.matrix()));
    }
    return worst;
}

double verify_reproduction(const SteeringAssemblage& s,
                           const BipartiteModel& m, const Behavior& b) {
    if (s.members.size() != m.scenario.alice.size()) {
        throw ScenarioMismatch("verify_reproduction: setting count mismatch");
    }
    double worst = 0.0;
    for (size_t x = 0; x < s.members.size(); ++x) {
        for (size_t a = 0; a < s.members[x].size(); ++a) {
            const CMatrix& sigma = s.members[x][a].matrix();
            for (size_t y = 0; y < m.scenario.bob.size(); ++y) {
                for (int bb = 0; bb < m.scenario.bob[y].outcomes; ++bb) {
                    const Complex predicted = trace_pairing(
                        sigma, m.bob.element(static_cast<int>(y), bb));
                    worst = std::max(
                        worst,
                        std::abs(predicted.real() -
                                 b.p(static_cast<int>(x), static_cast<int>(y),
                                     static_cast<int>(a), bb)));
                    worst = std::max(worst, std::abs(predicted.imag()));
                }
            }
        }
    }
    return worst;
}

}  // namespace atomexp
