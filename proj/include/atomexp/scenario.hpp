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

#ifndef ATOMEXP_SCENARIO_HPP_
#define ATOMEXP_SCENARIO_HPP_

#include <string>
#include <vector>

#include "atomexp/matrix.hpp"

namespace atomexp {

/// One measurement setting: an opaque label and its number of outcomes.
struct Setting {
    std::string label;
    int outcomes = 0;
};

/// Finite index sets for both parties. Outcomes are dense indices
/// internally; labels only matter for reports and JSON.
struct MeasurementScenario {
    std::vector<Setting> alice;
    std::vector<Setting> bob;
};

/// Elements indexed [setting][outcome]; completeness and positivity are
/// certified by validate_model, not by construction.
struct POVMFamily {
    Eigen::Index dim = 0;
    std::vector<std::vector<HermitianMatrix>> elements;

    [[nodiscard]] const CMatrix& element(int setting, int outcome) const {
        return elements.at(setting).at(outcome).matrix();
    }
};

/// Unit-trace PSD state; certified by validate_model.
struct DensityOperator {
    HermitianMatrix matrix;
};

/// A bipartite commuting-operator measurement model: both POVM families act
/// on one Hilbert space and every Alice element commutes with every Bob
/// element.
struct BipartiteModel {
    MeasurementScenario scenario;
    Eigen::Index dim = 0;
    POVMFamily alice;
    POVMFamily bob;
    DensityOperator state;
};

struct ConditionCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ConditionCheck> conditions;
    bool pass = false;

    [[nodiscard]] double residual(const std::string& name) const;
};

/// Checks positivity of every element, per-setting completeness on both
/// sides, cross-commutation, and the state's trace and positivity. Shape and
/// dimension mismatches throw ModelStructureError before any numerics.
ValidationReport validate_model(const BipartiteModel& m,
                                const TolerancePolicy& tol = {});

/// Joint probability table p(a,b|x,y), stored per setting pair with rows
/// indexed by Alice's outcome and columns by Bob's.
class Behavior {
  public:
    Behavior(MeasurementScenario scenario,
             std::vector<std::vector<RMatrix>> table);

    [[nodiscard]] const MeasurementScenario& scenario() const {
        return scenario_;
    }
    [[nodiscard]] double p(int x, int y, int a, int b) const {
        return table_.at(x).at(y)(a, b);
    }
    [[nodiscard]] const RMatrix& joint(int x, int y) const {
        return table_.at(x).at(y);
    }

    /// Alice marginal p(a|x), computed from the y = 0 column block.
    [[nodiscard]] double alice_marginal(int x, int a) const;

    struct Residuals {
        double range = 0.0;           // distance outside [0, 1]
        double normalization = 0.0;   // |sum_ab p - 1| worst case
        double no_signalling = 0.0;   // worst marginal deviation
    };
    [[nodiscard]] Residuals residuals() const;

  private:
    MeasurementScenario scenario_;
    std::vector<std::vector<RMatrix>> table_;
};

/// Computes p(a,b|x,y) = tr(rho E^x_a F^y_b). Validation is mandatory: an
/// invalid model throws ValidationFailed. Imaginary parts above eps_eq (a
/// symptom of broken commutation) throw InternalConsistencyError, as does
/// any violation of the behavior invariants after computation.
Behavior behavior(const BipartiteModel& m, const TolerancePolicy& tol = {});

/// S = E_00 + E_01 + E_10 - E_11 with E_xy = sum_ab (-1)^(a+b) p(a,b|x,y).
/// Requires a 2-setting / 2-outcome scenario on both sides.
double chsh_value(const Behavior& b);

/// All POVM elements of a family in a flat, deterministic order.
std::vector<CMatrix> povm_elements(const POVMFamily& family);

}  // namespace atomexp

#endif  // ATOMEXP_SCENARIO_HPP_
