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

#ifndef ATOMEXP_STEERING_HPP_
#define ATOMEXP_STEERING_HPP_

#include "atomexp/condexp.hpp"
#include "atomexp/scenario.hpp"

namespace atomexp {

/// Family {sigma^x_a} of subnormalized states indexed by Alice's setting
/// and outcome, with setting-independent barycenter sigma = sum_a sigma^x_a.
struct SteeringAssemblage {
    MeasurementScenario scenario;                       // Alice side used
    std::vector<std::vector<HermitianMatrix>> members;  // [x][a]
    HermitianMatrix barycenter;
};

/// Builds sigma^x_a = Phi^*((E^x_a)^(1/2) rho (E^x_a)^(1/2)).
///
/// Preconditions are enforced, not assumed: the model must validate
/// (ValidationFailed otherwise) and the sandwich condition
/// span(F) <= range(Phi) <= comm(E) must hold (SandwichViolation
/// otherwise) -- outside the hypothesis the construction is meaningless.
/// The barycenter is computed once as Phi^*(rho) and cross-checked against
/// each per-setting sum, so the identity behind it is checked on every build.
SteeringAssemblage build_assemblage(const BipartiteModel& m,
                                    const ConditionalExpectation& phi,
                                    const TolerancePolicy& tol = {});

/// max over x of ||sum_a sigma^x_a - barycenter||_max.
double verify_x_independence(const SteeringAssemblage& s);

/// max over (a,x,b,y) of |tr(sigma^x_a F^y_b) - p(a,b|x,y)|.
double verify_reproduction(const SteeringAssemblage& s,
                           const BipartiteModel& m, const Behavior& b);

}  // namespace atomexp

#endif  // ATOMEXP_STEERING_HPP_
