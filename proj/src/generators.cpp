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

#include "atomexp/generators.hpp"

#include <cmath>
#include <string>

namespace atomexp {

namespace {

MeasurementScenario make_scenario(const std::vector<int>& alice_outcomes,
                                  const std::vector<int>& bob_outcomes) {
    if (alice_outcomes.empty() || bob_outcomes.empty()) {
        throw ModelStructureError("generator: need >= 1 setting per side");
    }
    MeasurementScenario sc;
    for (size_t x = 0; x < alice_outcomes.size(); ++x) {
        if (alice_outcomes[x] < 1) {
            throw ModelStructureError("generator: setting with no outcomes");
        }
        sc.alice.push_back({"x" + std::to_string(x), alice_outcomes[x]});
    }
    for (size_t y = 0; y < bob_outcomes.size(); ++y) {
        if (bob_outcomes[y] < 1) {
            throw ModelStructureError("generator: setting with no outcomes");
        }
        sc.bob.push_back({"y" + std::to_string(y), bob_outcomes[y]});
    }
    return sc;
}

void conjugate_model(BipartiteModel& m, const CMatrix& u) {
    auto conj = [&](HermitianMatrix& h) {
        h = HermitianMatrix((u * h.matrix() * u.adjoint()).eval());
    };
    for (auto& setting : m.alice.elements) {
        for (auto& e : setting) conj(e);
    }
    for (auto& setting : m.bob.elements) {
        for (auto& e : setting) conj(e);
    }
    conj(m.state.matrix);
}

}  // namespace

BipartiteModel gen_hidden_tensor(const HiddenTensorParams& params, Rng& rng) {
    if (params.dim_a < 1 || params.dim_b < 1) {
        throw ModelStructureError("gen_hidden_tensor: factor dims must be >= 1");
    }
    const Eigen::Index n = params.dim_a * params.dim_b;
    const CMatrix id_a = CMatrix::Identity(params.dim_a, params.dim_a);
    const CMatrix id_b = CMatrix::Identity(params.dim_b, params.dim_b);

    BipartiteModel m;
    m.scenario = make_scenario(params.alice_outcomes, params.bob_outcomes);
    m.dim = n;
    m.alice.dim = n;
    m.bob.dim = n;

    for (const int outcomes : params.alice_outcomes) {
        std::vector<HermitianMatrix> setting;
        for (const HermitianMatrix& e :
             random_povm(rng, params.dim_a, outcomes)) {
            setting.emplace_back(kron(e.matrix(), id_b).eval());
        }
        m.alice.elements.push_back(std::move(setting));
    }
    for (const int outcomes : params.bob_outcomes) {
        std::vector<HermitianMatrix> setting;
        for (const HermitianMatrix& f :
             random_povm(rng, params.dim_b, outcomes)) {
            setting.emplace_back(kron(id_a, f.matrix()).eval());
        }
        m.bob.elements.push_back(std::move(setting));
    }

    if (params.product_state) {
        const HermitianMatrix rho_a = random_density(rng, params.dim_a);
        const HermitianMatrix rho_b = random_density(rng, params.dim_b);
        m.state.matrix =
            HermitianMatrix(kron(rho_a.matrix(), rho_b.matrix()).eval());
    } else {
        m.state.matrix = random_density(rng, n);
    }

    if (params.conjugate) conjugate_model(m, random_unitary(rng, n));
    return m;
}

BipartiteModel gen_direct_sum(const DirectSumParams& params, Rng& rng) {
    if (params.blocks.empty()) {
        throw ModelStructureError("gen_direct_sum: need >= 1 block");
    }
    Eigen::Index n = 0;
    for (const auto& [da, db] : params.blocks) {
        if (da < 1 || db < 1) {
            throw ModelStructureError("gen_direct_sum: block dims must be >= 1");
        }
        n += da * db;
    }

    std::vector<BipartiteModel> parts;
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (const auto& [da, db] : params.blocks) {
        HiddenTensorParams block;
        block.dim_a = da;
        block.dim_b = db;
        block.alice_outcomes = params.alice_outcomes;
        block.bob_outcomes = params.bob_outcomes;
        block.conjugate = false;
        parts.push_back(gen_hidden_tensor(block, rng));
        weights.push_back(0.1 + uniform_unit(rng));
        weight_sum += weights.back();
    }
    for (double& w : weights) w /= weight_sum;

    BipartiteModel m;
    m.scenario = make_scenario(params.alice_outcomes, params.bob_outcomes);
    m.dim = n;
    m.alice.dim = n;
    m.bob.dim = n;

    // POVMs direct-sum unweighted (completeness per block), the state with
    // convex weights.
    auto direct_sum_family = [&](bool alice_side) {
        std::vector<std::vector<HermitianMatrix>> out;
        const std::vector<int>& outcomes =
            alice_side ? params.alice_outcomes : params.bob_outcomes;
        for (size_t x = 0; x < outcomes.size(); ++x) {
            std::vector<HermitianMatrix> setting;
            for (int a = 0; a < outcomes[x]; ++a) {
                CMatrix sum = CMatrix::Zero(n, n);
                Eigen::Index offset = 0;
                for (const BipartiteModel& part : parts) {
                    const POVMFamily& family =
                        alice_side ? part.alice : part.bob;
                    sum.block(offset, offset, part.dim, part.dim) =
                        family.elements[x][a].matrix();
                    offset += part.dim;
                }
                setting.emplace_back(sum);
            }
            out.push_back(std::move(setting));
        }
        return out;
    };
    m.alice.elements = direct_sum_family(true);
    m.bob.elements = direct_sum_family(false);

    CMatrix rho = CMatrix::Zero(n, n);
    Eigen::Index offset = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        const Eigen::Index dk = parts[k].dim;
        rho.block(offset, offset, dk, dk) =
            weights[k] * parts[k].state.matrix.matrix();
        offset += dk;
    }
    m.state.matrix = HermitianMatrix(rho);

    conjugate_model(m, random_unitary(rng, n));
    return m;
}

BipartiteModel gen_chsh() {
    CMatrix pauli_x(2, 2), pauli_z(2, 2), id2 = CMatrix::Identity(2, 2);
    pauli_x << 0, 1, 1, 0;
    pauli_z << 1, 0, 0, -1;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    BipartiteModel m;
    m.scenario = make_scenario({2, 2}, {2, 2});
    m.dim = 4;
    m.alice.dim = 4;
    m.bob.dim = 4;

    auto binarize = [&](const CMatrix& observable, bool on_first) {
        std::vector<HermitianMatrix> setting;
        for (const double sign : {+1.0, -1.0}) {
            const CMatrix local = 0.5 * (id2 + sign * observable);
            setting.emplace_back(on_first ? kron(local, id2).eval()
                                          : kron(id2, local).eval());
        }
        return setting;
    };
    m.alice.elements.push_back(binarize(pauli_x, true));
    m.alice.elements.push_back(binarize(pauli_z, true));
    m.bob.elements.push_back(binarize(inv_sqrt2 * (pauli_x + pauli_z), false));
    m.bob.elements.push_back(binarize(inv_sqrt2 * (pauli_x - pauli_z), false));

    CVector bell = CVector::Zero(4);
    bell(0) = inv_sqrt2;  // (|00> + |11>)/sqrt(2)
    bell(3) = inv_sqrt2;
    m.state.matrix = HermitianMatrix((bell * bell.adjoint()).eval());
    return m;
}

BipartiteModel gen_classical(const ClassicalParams& params, Rng& rng) {
    if (params.dim < 1) {
        throw ModelStructureError("gen_classical: dim must be >= 1");
    }
    const Eigen::Index n = params.dim;

    BipartiteModel m;
    m.scenario = make_scenario(params.alice_outcomes, params.bob_outcomes);
    m.dim = n;
    m.alice.dim = n;
    m.bob.dim = n;

    auto diagonal_povm = [&](int outcomes) {
        // Per basis vector, a random conditional distribution over outcomes.
        std::vector<RVector> diags(outcomes, RVector::Zero(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            double total = 0.0;
            RVector raw(outcomes);
            for (int a = 0; a < outcomes; ++a) {
                raw(a) = 0.05 + uniform_unit(rng);
                total += raw(a);
            }
            for (int a = 0; a < outcomes; ++a) diags[a](i) = raw(a) / total;
        }
        // Force exact completeness in floating point.
        for (Eigen::Index i = 0; i < n; ++i) {
            double partial = 0.0;
            for (int a = 0; a + 1 < outcomes; ++a) partial += diags[a](i);
            diags[outcomes - 1](i) = 1.0 - partial;
        }
        std::vector<HermitianMatrix> setting;
        for (int a = 0; a < outcomes; ++a) {
            setting.emplace_back(
                CMatrix(diags[a].cast<Complex>().asDiagonal()));
        }
        return setting;
    };

    for (const int outcomes : params.alice_outcomes) {
        m.alice.elements.push_back(diagonal_povm(outcomes));
    }
    for (const int outcomes : params.bob_outcomes) {
        m.bob.elements.push_back(diagonal_povm(outcomes));
    }

    RVector p(n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i) = 0.05 + uniform_unit(rng);
        total += p(i);
    }
    p /= total;
    m.state.matrix = HermitianMatrix(CMatrix(p.cast<Complex>().asDiagonal()));
    return m;
}

}  // namespace atomexp
