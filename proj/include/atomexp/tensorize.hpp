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

#ifndef ATOMEXP_TENSORIZE_HPP_
#define ATOMEXP_TENSORIZE_HPP_

#include "atomexp/scenario.hpp"
#include "atomexp/vnalg.hpp"

namespace atomexp {

/// Tensor-product measurement model: Alice and Bob act on separate factors
/// and the state lives on the product space.
struct TensorModel {
    Eigen::Index dim_a = 0;
    Eigen::Index dim_b = 0;
    MeasurementScenario scenario;
    POVMFamily alice;  // on dim_a
    POVMFamily bob;    // on dim_b
    DensityOperator state;  // on dim_a * dim_b
};

enum class Side { Alice, Bob };

struct TensorizeOptions {
    /// Which party's generated algebra drives the block decomposition.
    Side side = Side::Alice;
    /// Pad both factors to the original dimension n, completing each POVM
    /// setting uniformly on the null block, so the conclusion's H (x) H
    /// form is met literally.
    bool padding = false;
};

struct TensorizeResult {
    TensorModel model;
    /// Block profile (n_k, m_k) of the driving algebra.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
};

/// Constructive tensor factorization: decompose W*(driving side's elements)
/// into Wedderburn blocks, split every operator into its M (x) I / I (x) M
/// components per block, and transport the state along the block-diagonal
/// embedding of sum_k C^{n_k} (x) C^{m_k} into H_A (x) H_B.
TensorizeResult tensorize(const BipartiteModel& m, Rng& rng,
                          const TensorizeOptions& options = {},
                          const TolerancePolicy& tol = {});

/// Same construction reusing an existing decomposition of the driving
/// side's algebra (which must contain that side's POVM elements).
TensorizeResult tensorize_with(const BipartiteModel& m,
                               const WedderburnData& data,
                               const TensorizeOptions& options = {},
                               const TolerancePolicy& tol = {});

/// Behavior of a tensor model: p(a,b|x,y) = tr(rho (E^x_a (x) F^y_b)).
Behavior tensor_behavior(const TensorModel& t, const TolerancePolicy& tol = {});

/// max over (a,x,b,y) of |tr(rho (E (x) F)) - p(a,b|x,y)|.
double verify_tensor_model(const TensorModel& t, const Behavior& b);

struct CrossCheckReport {
    double residual_alice = 0.0;       // reproduction residual, Alice-driven
    double residual_bob = 0.0;         // reproduction residual, Bob-driven
    double behavior_discrepancy = 0.0; // max |p_alice - p_bob|
};

/// Runs the decomposition from both sides and compares the two behaviors.
CrossCheckReport tensorize_cross_check(const BipartiteModel& m, Rng& rng,
                                       const TolerancePolicy& tol = {});

}  // namespace atomexp

#endif  // ATOMEXP_TENSORIZE_HPP_
