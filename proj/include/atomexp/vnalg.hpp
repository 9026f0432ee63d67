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

#ifndef ATOMEXP_VNALG_HPP_
#define ATOMEXP_VNALG_HPP_

#include <vector>

#include "atomexp/matrix.hpp"
#include "atomexp/random.hpp"

namespace atomexp {

/// A finite-dimensional von Neumann algebra given by a Hilbert-Schmidt
/// orthonormal basis of an ambient matrix space. At finite dimension every
/// such algebra is purely atomic; the operations below make that structure
/// explicit.
struct VNAlgebra {
    Eigen::Index dim = 0;          // ambient Hilbert space dimension
    std::vector<CMatrix> basis;    // HS-orthonormal
    bool contains_identity = false;

    [[nodiscard]] Eigen::Index algebra_dim() const {
        return static_cast<Eigen::Index>(basis.size());
    }

    /// HS-orthogonal projection of X onto span(basis).
    [[nodiscard]] CMatrix project(const CMatrix& x) const;

    /// ||X - project(X)||_HS.
    [[nodiscard]] double membership_residual(const CMatrix& x) const;

    /// Membership test at threshold eps_eq * (1 + ||X||_HS).
    [[nodiscard]] bool contains(const CMatrix& x,
                                const TolerancePolicy& tol = {}) const;
};

struct AlgebraResiduals {
    double orthonormality = 0.0;
    double star_closure = 0.0;
    double mult_closure = 0.0;
    double identity = 0.0;
    bool pass = false;
};

/// Closure residuals for the VNAlgebra invariants. With full_mult_check the
/// product check runs over all basis pairs, otherwise over a deterministic
/// sample of at most 128 pairs.
AlgebraResiduals validate_algebra(const VNAlgebra& alg,
                                  const TolerancePolicy& tol = {},
                                  bool full_mult_check = false);

/// Commutant {X : XG = GX and XG^dagger = G^dagger X for all generators},
/// computed as the nullspace of the stacked commutator maps. Adjoints are
/// adjoined internally, so the result is a von Neumann algebra for any
/// generator set. The commutant of the empty set is all of B(H).
VNAlgebra commutant(Eigen::Index dim, const std::vector<CMatrix>& generators,
                    const TolerancePolicy& tol = {});

/// W*(S) via the double commutant.
VNAlgebra generated_algebra(Eigen::Index dim,
                            const std::vector<CMatrix>& generators,
                            const TolerancePolicy& tol = {});

/// alg intersected with its own commutant.
VNAlgebra center(const VNAlgebra& alg, const TolerancePolicy& tol = {});

/// Orthogonal projections z_k spanning the center, summing to the identity,
/// each minimal in the center. Obtained by spectral clustering of a random
/// Hermitian central element; near-degenerate draws are resampled up to 10
/// times before RetriesExhausted.
std::vector<HermitianMatrix> minimal_central_projections(
    const VNAlgebra& alg, Rng& rng, const TolerancePolicy& tol = {});

struct WedderburnBlock {
    HermitianMatrix central_projection;  // z_k
    Eigen::Index factor_dim = 0;         // n_k
    Eigen::Index multiplicity = 0;       // m_k
    // Isometry (n_k * m_k) x n with U z_k = U, U U^dagger = I; conjugation
    // by U carries the algebra restricted to range(z_k) onto {M (x) I_m}.
    CMatrix isometry;
};

struct WedderburnData {
    std::vector<WedderburnBlock> blocks;

    [[nodiscard]] std::vector<std::pair<Eigen::Index, Eigen::Index>>
    block_profile() const;
};

/// Constructive Wedderburn decomposition of a unital algebra: central
/// projections, per-block factor dimension and multiplicity, and explicit
/// factorization isometries built from matrix units. The matrix units come
/// from a generic element's eigenclusters and partial isometries
/// p_i G' p_1 normalized inside the block.
WedderburnData wedderburn(const VNAlgebra& alg, Rng& rng,
                          const TolerancePolicy& tol = {});

/// Projections p_i in alg, mutually orthogonal, summing to the identity,
/// each minimal in alg (p alg p is one-dimensional). Block k contributes
/// factor_dim projections of rank multiplicity.
std::vector<HermitianMatrix> minimal_projection_resolution(
    const VNAlgebra& alg, Rng& rng, const TolerancePolicy& tol = {});

/// Eigenvalue clustering threshold used by the generic-element method; the
/// scan runs on eigenvalues normalized by the spectral radius.
inline constexpr double kClusterGap = 1e-6;

/// Acceptance threshold for block factorization residuals.
inline constexpr double kFactorizationTol = 1e-8;

/// Retry budget for randomized spectral splits.
inline constexpr int kMaxRetries = 10;

}  // namespace atomexp

#endif  // ATOMEXP_VNALG_HPP_
