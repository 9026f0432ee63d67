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

#ifndef ATOMEXP_GENERATORS_HPP_
#define ATOMEXP_GENERATORS_HPP_

#include <utility>
#include <vector>

#include "atomexp/random.hpp"
#include "atomexp/scenario.hpp"

namespace atomexp {

/// Random tensor-product model on C^{dim_a} (x) C^{dim_b}, optionally
/// conjugated by a Haar unitary so the product structure is hidden. Ground
/// truth for the Alice-generated algebra: one block (dim_a, dim_b),
/// provided the per-setting POVMs are generic and number at least two.
struct HiddenTensorParams {
    Eigen::Index dim_a = 2;
    Eigen::Index dim_b = 3;
    std::vector<int> alice_outcomes{2, 2};  // one entry per setting
    std::vector<int> bob_outcomes{2, 2};
    bool conjugate = true;
    bool product_state = false;  // rho = rho_A (x) rho_B
};
BipartiteModel gen_hidden_tensor(const HiddenTensorParams& params, Rng& rng);

/// Convex-combination direct sum of hidden-tensor blocks, conjugated by a
/// global Haar unitary; exercises nontrivial centers. Ground truth: one
/// Wedderburn block per summand.
struct DirectSumParams {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks{{2, 2}, {1, 3}};
    std::vector<int> alice_outcomes{2, 2};
    std::vector<int> bob_outcomes{2, 2};
};
BipartiteModel gen_direct_sum(const DirectSumParams& params, Rng& rng);

/// The Tsirelson-optimal two-qubit construction: maximally entangled state,
/// Alice measures X and Z, Bob measures (X +- Z)/sqrt(2), all binarized to
/// projective POVMs. chsh_value of its behavior is 2*sqrt(2).
BipartiteModel gen_chsh();

/// All operators diagonal in a common basis: a local hidden variable model
/// in operator clothing.
struct ClassicalParams {
    Eigen::Index dim = 4;
    std::vector<int> alice_outcomes{2, 2};
    std::vector<int> bob_outcomes{2, 2};
};
BipartiteModel gen_classical(const ClassicalParams& params, Rng& rng);

}  // namespace atomexp

#endif  // ATOMEXP_GENERATORS_HPP_
