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

#include "atomexp/tensorize.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace atomexp {

namespace {

struct BlockLayout {
    std::vector<Eigen::Index> factor_offset;  // offsets of n_k blocks
    std::vector<Eigen::Index> mult_offset;    // offsets of m_k blocks
    Eigen::Index factor_total = 0;            // sum n_k
    Eigen::Index mult_total = 0;              // sum m_k
};

BlockLayout layout_of(const WedderburnData& data) {
    BlockLayout l;
    for (const WedderburnBlock& b : data.blocks) {
        l.factor_offset.push_back(l.factor_total);
        l.mult_offset.push_back(l.mult_total);
        l.factor_total += b.factor_dim;
        l.mult_total += b.multiplicity;
    }
    return l;
}

// Factor component of X on the driving side: X must act as M (x) I in
// every block; returns the block-diagonal direct sum of the M's.
CMatrix factor_component(const CMatrix& x, const WedderburnData& data,
                         const BlockLayout& l) {
    CMatrix out = CMatrix::Zero(l.factor_total, l.factor_total);
    for (size_t k = 0; k < data.blocks.size(); ++k) {
        const WedderburnBlock& blk = data.blocks[k];
        const CMatrix conj = blk.isometry * x * blk.isometry.adjoint();
        const CMatrix m =
            partial_trace(conj, blk.factor_dim, blk.multiplicity,
                          TraceSide::Second) /
            static_cast<double>(blk.multiplicity);
        const double residual = max_abs(
            conj - kron(m, CMatrix::Identity(blk.multiplicity,
                                             blk.multiplicity)));
        if (residual > kFactorizationTol) {
            throw ComponentExtractionResidual(
                "tensorize: operator is " + std::to_string(residual) +
                " away from M (x) I form in block " + std::to_string(k));
        }
        out.block(l.factor_offset[k], l.factor_offset[k], blk.factor_dim,
                  blk.factor_dim) = m;
    }
    return out;
}

// Multiplicity component: X must act as I (x) N in every block.
CMatrix mult_component(const CMatrix& x, const WedderburnData& data,
                       const BlockLayout& l) {
    CMatrix out = CMatrix::Zero(l.mult_total, l.mult_total);
    for (size_t k = 0; k < data.blocks.size(); ++k) {
        const WedderburnBlock& blk = data.blocks[k];
        const CMatrix conj = blk.isometry * x * blk.isometry.adjoint();
        const CMatrix n =
            partial_trace(conj, blk.factor_dim, blk.multiplicity,
                          TraceSide::First) /
            static_cast<double>(blk.factor_dim);
        const double residual = max_abs(
            conj -
            kron(CMatrix::Identity(blk.factor_dim, blk.factor_dim), n));
        if (residual > kFactorizationTol) {
            throw ComponentExtractionResidual(
                "tensorize: operator is " + std::to_string(residual) +
                " away from I (x) N form in block " + std::to_string(k));
        }
        out.block(l.mult_offset[k], l.mult_offset[k], blk.multiplicity,
                  blk.multiplicity) = n;
    }
    return out;
}

POVMFamily map_family(const POVMFamily& family, const WedderburnData& data,
                      const BlockLayout& l, bool driving,
                      const TolerancePolicy& tol) {
    POVMFamily out;
    out.dim = driving ? l.factor_total : l.mult_total;
    for (const auto& setting : family.elements) {
        std::vector<HermitianMatrix> mapped;
        for (const HermitianMatrix& e : setting) {
            const CMatrix component =
                driving ? factor_component(e.matrix(), data, l)
                        : mult_component(e.matrix(), data, l);
            mapped.emplace_back(component, tol.eps_herm);
        }
        out.elements.push_back(std::move(mapped));
    }
    return out;
}

POVMFamily pad_family(const POVMFamily& family, Eigen::Index target,
                      const TolerancePolicy& tol) {
    if (family.dim == target) return family;
    const Eigen::Index pad = target - family.dim;
    POVMFamily out;
    out.dim = target;
    for (const auto& setting : family.elements) {
        const double share = 1.0 / static_cast<double>(setting.size());
        std::vector<HermitianMatrix> padded;
        for (const HermitianMatrix& e : setting) {
            CMatrix big = CMatrix::Zero(target, target);
            big.topLeftCorner(family.dim, family.dim) = e.matrix();
            big.bottomRightCorner(pad, pad) =
                share * CMatrix::Identity(pad, pad);
            padded.emplace_back(big, tol.eps_herm);
        }
        out.elements.push_back(std::move(padded));
    }
    return out;
}

CMatrix embed_state(const CMatrix& rho, Eigen::Index da, Eigen::Index db,
                    Eigen::Index ta, Eigen::Index tb) {
    if (da == ta && db == tb) return rho;
    CMatrix out = CMatrix::Zero(ta * tb, ta * tb);
    for (Eigen::Index ia = 0; ia < da; ++ia) {
        for (Eigen::Index ib = 0; ib < db; ++ib) {
            for (Eigen::Index ja = 0; ja < da; ++ja) {
                for (Eigen::Index jb = 0; jb < db; ++jb) {
                    out(ia * tb + ib, ja * tb + jb) =
                        rho(ia * db + ib, ja * db + jb);
                }
            }
        }
    }
    return out;
}

}  // namespace

TensorizeResult tensorize_with(const BipartiteModel& m,
                               const WedderburnData& data,
                               const TensorizeOptions& options,
                               const TolerancePolicy& tol) {
    const BlockLayout l = layout_of(data);
    const bool alice_drives = options.side == Side::Alice;

    const POVMFamily mapped_alice =
        map_family(m.alice, data, l, alice_drives, tol);
    const POVMFamily mapped_bob =
        map_family(m.bob, data, l, !alice_drives, tol);

    const Eigen::Index dim_a = mapped_alice.dim;
    const Eigen::Index dim_b = mapped_bob.dim;

    // Embed sum_k C^{n_k} (x) C^{m_k} block-diagonally into H_A (x) H_B and
    // transport the state.
    CMatrix v = CMatrix::Zero(dim_a * dim_b, m.dim);
    for (size_t k = 0; k < data.blocks.size(); ++k) {
        const WedderburnBlock& blk = data.blocks[k];
        const Eigen::Index off_drive = l.factor_offset[k];
        const Eigen::Index off_mult = l.mult_offset[k];
        for (Eigen::Index i = 0; i < blk.factor_dim; ++i) {
            for (Eigen::Index s = 0; s < blk.multiplicity; ++s) {
                const Eigen::Index row =
                    alice_drives
                        ? (off_drive + i) * dim_b + (off_mult + s)
                        : (off_mult + s) * dim_b + (off_drive + i);
                v.row(row) = blk.isometry.row(i * blk.multiplicity + s);
            }
        }
    }
    CMatrix rho_tensor = v * m.state.matrix.matrix() * v.adjoint();

    TensorizeResult result;
    result.blocks = data.block_profile();
    result.model.scenario = m.scenario;
    result.model.dim_a = dim_a;
    result.model.dim_b = dim_b;
    result.model.alice = mapped_alice;
    result.model.bob = mapped_bob;

    if (options.padding) {
        result.model.alice = pad_family(mapped_alice, m.dim, tol);
        result.model.bob = pad_family(mapped_bob, m.dim, tol);
        rho_tensor = embed_state(rho_tensor, dim_a, dim_b, m.dim, m.dim);
        result.model.dim_a = m.dim;
        result.model.dim_b = m.dim;
    }
    result.model.state.matrix = HermitianMatrix(rho_tensor, tol.eps_herm);

    // Output invariants: per-setting completeness and a unit-trace state.
    for (const POVMFamily* family :
         {&result.model.alice, &result.model.bob}) {
        for (const auto& setting : family->elements) {
            CMatrix sum = CMatrix::Zero(family->dim, family->dim);
            for (const HermitianMatrix& e : setting) sum += e.matrix();
            const double dev =
                max_abs(sum - CMatrix::Identity(family->dim, family->dim));
            if (dev > tol.eps_eq) {
                throw InternalConsistencyError(
                    "tensorize: mapped POVM completeness off by " +
                    std::to_string(dev));
            }
        }
    }
    const double trace_error =
        std::abs(result.model.state.matrix.matrix().trace().real() - 1.0);
    if (trace_error > tol.eps_eq) {
        throw InternalConsistencyError("tensorize: state trace off by " +
                                       std::to_string(trace_error));
    }
    return result;
}

TensorizeResult tensorize(const BipartiteModel& m, Rng& rng,
                          const TensorizeOptions& options,
                          const TolerancePolicy& tol) {
    const ValidationReport validation = validate_model(m, tol);
    if (!validation.pass) {
        throw ValidationFailed("tensorize: model failed validation");
    }
    const std::vector<CMatrix> driving =
        povm_elements(options.side == Side::Alice ? m.alice : m.bob);
    const VNAlgebra alg = generated_algebra(m.dim, driving, tol);
    const WedderburnData data = wedderburn(alg, rng, tol);
    return tensorize_with(m, data, options, tol);
}

Behavior tensor_behavior(const TensorModel& t, const TolerancePolicy& tol) {
    std::vector<std::vector<RMatrix>> table;
    for (size_t x = 0; x < t.scenario.alice.size(); ++x) {
        std::vector<RMatrix> row;
        for (size_t y = 0; y < t.scenario.bob.size(); ++y) {
            RMatrix block(t.scenario.alice[x].outcomes,
                          t.scenario.bob[y].outcomes);
            for (int a = 0; a < t.scenario.alice[x].outcomes; ++a) {
                for (int b = 0; b < t.scenario.bob[y].outcomes; ++b) {
                    const CMatrix effect =
                        kron(t.alice.element(static_cast<int>(x), a),
                             t.bob.element(static_cast<int>(y), b));
                    const Complex value =
                        trace_pairing(t.state.matrix.matrix(), effect);
                    if (std::abs(value.imag()) > tol.eps_eq) {
                        throw InternalConsistencyError(
                            "tensor_behavior: imaginary probability leakage");
                    }
                    block(a, b) = value.real();
                }
            }
            row.push_back(std::move(block));
        }
        table.push_back(std::move(row));
    }
    return Behavior(t.scenario, std::move(table));
}

double verify_tensor_model(const TensorModel& t, const Behavior& b) {
    double worst = 0.0;
    for (size_t x = 0; x < t.scenario.alice.size(); ++x) {
        for (size_t y = 0; y < t.scenario.bob.size(); ++y) {
            for (int a = 0; a < t.scenario.alice[x].outcomes; ++a) {
                for (int bb = 0; bb < t.scenario.bob[y].outcomes; ++bb) {
                    const CMatrix effect =
                        kron(t.alice.element(static_cast<int>(x), a),
                             t.bob.element(static_cast<int>(y), bb));
                    const Complex value =
                        trace_pairing(t.state.matrix.matrix(), effect);
                    worst = std::max(
                        worst, std::abs(value - Complex(b.p(
                                                    static_cast<int>(x),
                                                    static_cast<int>(y), a,
                                                    bb))));
                }
            }
        }
    }
    return worst;
}

CrossCheckReport tensorize_cross_check(const BipartiteModel& m, Rng& rng,
                                       const TolerancePolicy& tol) {
    const Behavior reference = behavior(m, tol);
    const TensorizeResult via_alice =
        tensorize(m, rng, {Side::Alice, false}, tol);
    const TensorizeResult via_bob = tensorize(m, rng, {Side::Bob, false}, tol);

    CrossCheckReport report;
    report.residual_alice = verify_tensor_model(via_alice.model, reference);
    report.residual_bob = verify_tensor_model(via_bob.model, reference);

    const Behavior pa = tensor_behavior(via_alice.model, tol);
    const Behavior pb = tensor_behavior(via_bob.model, tol);
    for (size_t x = 0; x < m.scenario.alice.size(); ++x) {
        for (size_t y = 0; y < m.scenario.bob.size(); ++y) {
            report.behavior_discrepancy = std::max(
                report.behavior_discrepancy,
                max_abs(pa.joint(static_cast<int>(x), static_cast<int>(y)) -
                        pb.joint(static_cast<int>(x), static_cast<int>(y))));
        }
    }
    return report;
}

}  // namespace atomexp
