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

#include "atomexp/vnalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace atomexp {

namespace {

CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Eigen::Index n) {
    return Eigen::Map<const CMatrix>(v.data(), n, n);
}

// Matrix of X -> GX - XG acting on column-major vec(X).
CMatrix adjoint_action(const CMatrix& g) {
    const Eigen::Index n = g.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    return kron(id, g) - kron(g.transpose().eval(), id);
}

// Ascending eigenvalues split into clusters separated (after normalization
// by the spectral radius) by more than kClusterGap. Returns cluster sizes.
std::vector<Eigen::Index> eigen_clusters(const RVector& values) {
    std::vector<Eigen::Index> sizes;
    const Eigen::Index n = values.size();
    if (n == 0) return sizes;
    const double scale = std::max(std::abs(values(0)),
                                  std::abs(values(n - 1)));
    if (scale == 0.0) {
        sizes.push_back(n);
        return sizes;
    }
    Eigen::Index current = 1;
    for (Eigen::Index i = 1; i < n; ++i) {
        if ((values(i) - values(i - 1)) / scale > kClusterGap) {
            sizes.push_back(current);
            current = 1;
        } else {
            ++current;
        }
    }
    sizes.push_back(current);
    return sizes;
}

// Random element of span(basis); Hermitian variant adds the adjoint.
CMatrix random_combination(const std::vector<CMatrix>& basis, Rng& rng) {
    CMatrix out = CMatrix::Zero(basis[0].rows(), basis[0].cols());
    for (const CMatrix& b : basis) out += complex_gaussian(rng) * b;
    return out;
}

CMatrix random_hermitian_combination(const std::vector<CMatrix>& basis,
                                     Rng& rng) {
    const CMatrix c = random_combination(basis, rng);
    return 0.5 * (c + c.adjoint().eval());
}

Eigen::Index numerical_rank(const CMatrix& columns,
                            const TolerancePolicy& tol) {
    if (columns.size() == 0) return 0;
    RVector sv;
    if (std::min(columns.rows(), columns.cols()) > 16) {
        sv = Eigen::BDCSVD<CMatrix>(columns).singularValues();
    }
    if (sv.size() == 0 || !sv.allFinite()) {
        sv = Eigen::JacobiSVD<CMatrix>(columns).singularValues();
    }
    const double cutoff = tol.eps_rank * sv(0) *
                          static_cast<double>(
                              std::max(columns.rows(), columns.cols()));
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return rank;
}

}  // namespace

CMatrix VNAlgebra::project(const CMatrix& x) const {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (const CMatrix& b : basis) out += hs_inner(b, x) * b;
    return out;
}

double VNAlgebra::membership_residual(const CMatrix& x) const {
    return hs_norm(x - project(x));
}

bool VNAlgebra::contains(const CMatrix& x, const TolerancePolicy& tol) const {
    return membership_residual(x) <= tol.eps_eq * (1.0 + hs_norm(x));
}

AlgebraResiduals validate_algebra(const VNAlgebra& alg,
                                  const TolerancePolicy& tol,
                                  bool full_mult_check) {
    AlgebraResiduals res;
    const Eigen::Index b = alg.algebra_dim();
    const Eigen::Index n = alg.dim;
    if (b == 0 || n == 0) {
        res.identity = 1.0;
        return res;
    }

    CMatrix vecs(n * n, b);
    for (Eigen::Index j = 0; j < b; ++j) vecs.col(j) = vec(alg.basis[j]);
    res.orthonormality =
        max_abs(CMatrix(vecs.adjoint() * vecs) - CMatrix::Identity(b, b));

    auto relative_residual = [&](const CMatrix& x) {
        return alg.membership_residual(x) / (1.0 + hs_norm(x));
    };
    for (const CMatrix& basis_element : alg.basis) {
        res.star_closure = std::max(
            res.star_closure, relative_residual(basis_element.adjoint()));
    }
    res.identity = relative_residual(CMatrix::Identity(n, n));

    const Eigen::Index pairs = b * b;
    const Eigen::Index step =
        full_mult_check ? 1 : std::max<Eigen::Index>(1, pairs / 128);
    for (Eigen::Index p = 0; p < pairs; p += step) {
        const CMatrix prod = alg.basis[p / b] * alg.basis[p % b];
        res.mult_closure = std::max(res.mult_closure, relative_residual(prod));
    }

    res.pass = res.orthonormality <= tol.eps_eq &&
               res.star_closure <= tol.eps_eq &&
               res.mult_closure <= tol.eps_eq && res.identity <= tol.eps_eq;
    return res;
}

namespace {

// Full B(H): matrix units are already HS-orthonormal.
VNAlgebra full_algebra(Eigen::Index dim) {
    VNAlgebra out;
    out.dim = dim;
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            CMatrix e = CMatrix::Zero(dim, dim);
            e(i, j) = 1.0;
            out.basis.push_back(std::move(e));
        }
    }
    out.contains_identity = true;
    return out;
}

}  // namespace

namespace {

VNAlgebra commutant_stacked(Eigen::Index dim,
                            const std::vector<CMatrix>& generators,
                            const TolerancePolicy& tol) {
    std::vector<CMatrix> maps;
    for (const CMatrix& g : generators) {
        // A numerically central generator contributes a pure-noise map whose
        // largest singular value would poison the relative rank cutoff; it
        // constrains nothing, so it is dropped.
        const double scale = 1.0 + hs_norm(g);
        CMatrix action = adjoint_action(g);
        if (hs_norm(action) > 1e-12 * scale) maps.push_back(std::move(action));
        const CMatrix ga = g.adjoint();
        if (!(g - ga).isZero(0.0)) {
            CMatrix adjoint_map = adjoint_action(ga);
            if (hs_norm(adjoint_map) > 1e-12 * scale) {
                maps.push_back(std::move(adjoint_map));
            }
        }
    }

    if (maps.empty()) return full_algebra(dim);

    VNAlgebra out;
    out.dim = dim;
    const Eigen::Index n2 = dim * dim;
    CMatrix stacked(static_cast<Eigen::Index>(maps.size()) * n2, n2);
    for (size_t k = 0; k < maps.size(); ++k) {
        stacked.middleRows(static_cast<Eigen::Index>(k) * n2, n2) = maps[k];
    }

    for (const CVector& v : nullspace_basis(stacked, tol)) {
        out.basis.push_back(unvec(v, dim));
    }
    out.contains_identity = out.contains(CMatrix::Identity(dim, dim), tol);
    return out;
}

}  // namespace

VNAlgebra commutant(Eigen::Index dim, const std::vector<CMatrix>& generators,
                    const TolerancePolicy& tol) {
    if (dim <= 0) throw DimensionMismatch("commutant: dim must be positive");
    for (const CMatrix& g : generators) {
        if (g.rows() != dim || g.cols() != dim) {
            throw DimensionMismatch("commutant: generator is not dim x dim");
        }
    }

    // Large generator sets: the commutant of two generic combinations can
    // only be larger, so compute that cheaply and verify each resulting
    // basis element against every original generator. Any failure falls
    // back to the full stack. Coefficients come from a fixed-seed stream,
    // keeping the result deterministic in the inputs.
    if (generators.size() > 8) {
        Rng mix(0x9e3779b97f4a7c15ull ^
                (static_cast<std::uint64_t>(generators.size()) << 20) ^
                static_cast<std::uint64_t>(dim));
        std::vector<CMatrix> reduced;
        for (int k = 0; k < 2; ++k) {
            CMatrix g = CMatrix::Zero(dim, dim);
            for (const CMatrix& gen : generators) {
                g += complex_gaussian(mix) * gen;
            }
            reduced.push_back(std::move(g));
        }
        VNAlgebra candidate = commutant_stacked(dim, reduced, tol);
        bool verified = true;
        for (const CMatrix& x : candidate.basis) {
            for (const CMatrix& g : generators) {
                if (max_abs(CMatrix(x * g - g * x)) >
                    1e-10 * (1.0 + max_abs(g))) {
                    verified = false;
                    break;
                }
            }
            if (!verified) break;
        }
        if (verified) return candidate;
    }
    return commutant_stacked(dim, generators, tol);
}

VNAlgebra generated_algebra(Eigen::Index dim,
                            const std::vector<CMatrix>& generators,
                            const TolerancePolicy& tol) {
    const VNAlgebra first = commutant(dim, generators, tol);
    return commutant(dim, first.basis, tol);
}

VNAlgebra center(const VNAlgebra& alg, const TolerancePolicy& tol) {
    const VNAlgebra comm = commutant(alg.dim, alg.basis, tol);
    const Eigen::Index n2 = alg.dim * alg.dim;
    const Eigen::Index b = alg.algebra_dim();
    const Eigen::Index c = comm.algebra_dim();

    VNAlgebra out;
    out.dim = alg.dim;
    if (b == 0 || c == 0) return out;

    // Intersection of the two spans: nullspace of [U | -V] gives pairs
    // (alpha, beta) with U alpha = V beta.
    CMatrix stacked(n2, b + c);
    for (Eigen::Index j = 0; j < b; ++j) stacked.col(j) = vec(alg.basis[j]);
    for (Eigen::Index j = 0; j < c; ++j) {
        stacked.col(b + j) = -vec(comm.basis[j]);
    }
    const std::vector<CVector> null = nullspace_basis(stacked, tol);
    if (null.empty()) return out;

    CMatrix members(n2, static_cast<Eigen::Index>(null.size()));
    for (size_t j = 0; j < null.size(); ++j) {
        CVector w = CVector::Zero(n2);
        for (Eigen::Index i = 0; i < b; ++i) {
            w += null[j](i) * vec(alg.basis[i]);
        }
        members.col(static_cast<Eigen::Index>(j)) = w;
    }
    // Re-orthonormalize; the alpha parts are independent but not orthogonal.
    Eigen::HouseholderQR<CMatrix> qr(members);
    const CMatrix thin_q =
        qr.householderQ() * CMatrix::Identity(n2, members.cols());
    for (Eigen::Index j = 0; j < thin_q.cols(); ++j) {
        out.basis.push_back(unvec(thin_q.col(j), alg.dim));
    }
    out.contains_identity =
        out.contains(CMatrix::Identity(alg.dim, alg.dim), tol);
    return out;
}

std::vector<HermitianMatrix> minimal_central_projections(
    const VNAlgebra& alg, Rng& rng, const TolerancePolicy& tol) {
    const VNAlgebra z = center(alg, tol);
    const Eigen::Index c = z.algebra_dim();
    const Eigen::Index n = alg.dim;
    if (c == 0) {
        throw InvalidAlgebra(
            "minimal_central_projections: empty center (algebra not unital?)");
    }

    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const HermitianMatrix h(random_hermitian_combination(z.basis, rng),
                                1e-6);
        const HermitianEig eig = hermitian_eig(h);
        const std::vector<Eigen::Index> clusters =
            eigen_clusters(eig.eigenvalues);
        if (static_cast<Eigen::Index>(clusters.size()) != c) continue;

        std::vector<HermitianMatrix> projections;
        bool ok = true;
        Eigen::Index offset = 0;
        for (const Eigen::Index size : clusters) {
            const CMatrix block = eig.eigenvectors.middleCols(offset, size);
            offset += size;
            const CMatrix p = block * block.adjoint();
            if (max_abs(CMatrix(p * p - p)) > tol.eps_eq ||
                !z.contains(p, tol)) {
                ok = false;
                break;
            }
            projections.emplace_back(p);
        }
        if (!ok) continue;

        CMatrix sum = CMatrix::Zero(n, n);
        for (const HermitianMatrix& p : projections) sum += p.matrix();
        if (max_abs(sum - CMatrix::Identity(n, n)) > tol.eps_eq) continue;
        return projections;
    }
    throw RetriesExhausted(
        "minimal_central_projections: spectral clustering never separated "
        "after " +
        std::to_string(kMaxRetries) + " attempts");
}

std::vector<std::pair<Eigen::Index, Eigen::Index>>
WedderburnData::block_profile() const {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> profile;
    for (const WedderburnBlock& b : blocks) {
        profile.emplace_back(b.factor_dim, b.multiplicity);
    }
    return profile;
}

namespace {

// One Wedderburn block: factor the compression of alg to range(z) as
// M_{n_k} (x) I_{m_k} via matrix units from a generic element.
WedderburnBlock factor_block(const VNAlgebra& alg, const CMatrix& z, Rng& rng,
                             const TolerancePolicy& tol) {
    const Eigen::Index n = alg.dim;

    const HermitianEig zeig = hermitian_eig(HermitianMatrix(z, 1e-6));
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = zeig.eigenvalues(i);
        if (std::min(std::abs(lambda), std::abs(lambda - 1.0)) > 1e-6) {
            throw InternalConsistencyError(
                "wedderburn: central projection has non 0/1 spectrum");
        }
        if (lambda > 0.5) ++r;
    }
    const CMatrix w = zeig.eigenvectors.rightCols(r);  // ascending order

    std::vector<CMatrix> compressed;
    compressed.reserve(alg.basis.size());
    for (const CMatrix& b : alg.basis) {
        compressed.push_back((w.adjoint() * b * w).eval());
    }
    CMatrix compressed_vecs(r * r, static_cast<Eigen::Index>(compressed.size()));
    for (size_t j = 0; j < compressed.size(); ++j) {
        compressed_vecs.col(static_cast<Eigen::Index>(j)) =
            Eigen::Map<const CVector>(compressed[j].data(), r * r);
    }
    const Eigen::Index block_dim = numerical_rank(compressed_vecs, tol);

    double worst_residual = -1.0;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const CMatrix h = random_hermitian_combination(compressed, rng);
        const HermitianEig eig = hermitian_eig(HermitianMatrix(h, 1e-6));
        const std::vector<Eigen::Index> clusters =
            eigen_clusters(eig.eigenvalues);

        const Eigen::Index nk = static_cast<Eigen::Index>(clusters.size());
        if (r % nk != 0) continue;
        const Eigen::Index mk = r / nk;
        if (std::any_of(clusters.begin(), clusters.end(),
                        [&](Eigen::Index s) { return s != mk; })) {
            continue;
        }
        if (block_dim != nk * nk) continue;

        std::vector<CMatrix> eigenblocks;
        Eigen::Index offset = 0;
        for (Eigen::Index i = 0; i < nk; ++i) {
            eigenblocks.push_back(eig.eigenvectors.middleCols(offset, mk));
            offset += mk;
        }

        CMatrix g = random_combination(compressed, rng);
        const double gnorm = hs_norm(g);
        if (gnorm == 0.0) continue;
        g /= gnorm;

        // Partial isometries v_i = p_i G p_1 / sqrt(c_i): because p_1 is
        // minimal, w^dagger w is a scalar multiple of p_1, so the polar
        // factor reduces to a normalization.
        CMatrix t(r, r);
        t.leftCols(mk) = eigenblocks[0];
        bool ok = true;
        for (Eigen::Index i = 1; i < nk; ++i) {
            const CMatrix small =
                eigenblocks[i].adjoint() * g * eigenblocks[0];
            const double ci = small.squaredNorm() / static_cast<double>(mk);
            if (ci < 1e-10) {
                ok = false;
                break;
            }
            const CMatrix gram = small.adjoint() * small;
            if (max_abs(gram - ci * CMatrix::Identity(mk, mk)) / ci > 1e-6) {
                ok = false;
                break;
            }
            t.middleCols(i * mk, mk) = eigenblocks[i] * (small / std::sqrt(ci));
        }
        if (!ok) continue;

        // Polar correction T <- T (T^dagger T)^(-1/2); near-identity Gram.
        const HermitianEig gram_eig =
            hermitian_eig(HermitianMatrix(t.adjoint() * t, 1e-6));
        if (gram_eig.eigenvalues(0) < 0.5) continue;
        t = t * (gram_eig.eigenvectors *
                 gram_eig.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                 gram_eig.eigenvectors.adjoint());

        const CMatrix isometry = t.adjoint() * w.adjoint();  // r x n

        double residual = 0.0;
        const CMatrix id_m = CMatrix::Identity(mk, mk);
        for (const CMatrix& b : alg.basis) {
            const CMatrix conj = isometry * b * isometry.adjoint();
            const CMatrix factor =
                partial_trace(conj, nk, mk, TraceSide::Second) /
                static_cast<double>(mk);
            residual = std::max(residual, max_abs(conj - kron(factor, id_m)));
        }
        worst_residual = residual;
        if (residual > kFactorizationTol) continue;

        WedderburnBlock block;
        block.central_projection = HermitianMatrix(z, 1e-6);
        block.factor_dim = nk;
        block.multiplicity = mk;
        block.isometry = isometry;
        return block;
    }

    if (worst_residual > kFactorizationTol) {
        throw FactorizationResidual(
            "wedderburn: block factorization residual " +
            std::to_string(worst_residual) + " exceeds " +
            std::to_string(kFactorizationTol));
    }
    throw RetriesExhausted(
        "wedderburn: generic-element split failed after " +
        std::to_string(kMaxRetries) + " attempts");
}

}  // namespace

WedderburnData wedderburn(const VNAlgebra& alg, Rng& rng,
                          const TolerancePolicy& tol) {
    if (!alg.contains(CMatrix::Identity(alg.dim, alg.dim), tol)) {
        throw InvalidAlgebra("wedderburn: algebra does not contain I");
    }
    const std::vector<HermitianMatrix> zs =
        minimal_central_projections(alg, rng, tol);

    WedderburnData data;
    Eigen::Index total = 0;
    Eigen::Index dim_sum = 0;
    for (const HermitianMatrix& z : zs) {
        data.blocks.push_back(factor_block(alg, z.matrix(), rng, tol));
        total += data.blocks.back().factor_dim *
                 data.blocks.back().multiplicity;
        dim_sum += data.blocks.back().factor_dim *
                   data.blocks.back().factor_dim;
    }
    if (total != alg.dim) {
        throw InternalConsistencyError(
            "wedderburn: sum n_k m_k = " + std::to_string(total) +
            " differs from ambient dimension " + std::to_string(alg.dim));
    }
    if (dim_sum != alg.algebra_dim()) {
        throw InternalConsistencyError(
            "wedderburn: sum n_k^2 = " + std::to_string(dim_sum) +
            " differs from algebra dimension " +
            std::to_string(alg.algebra_dim()));
    }
    return data;
}

std::vector<HermitianMatrix> minimal_projection_resolution(
    const VNAlgebra& alg, Rng& rng, const TolerancePolicy& tol) {
    const WedderburnData data = wedderburn(alg, rng, tol);
    std::vector<HermitianMatrix> projections;
    for (const WedderburnBlock& block : data.blocks) {
        for (Eigen::Index i = 0; i < block.factor_dim; ++i) {
            const CMatrix rows =
                block.isometry.middleRows(i * block.multiplicity,
                                          block.multiplicity);
            projections.emplace_back((rows.adjoint() * rows).eval(),
                                     tol.eps_herm);
        }
    }
    return projections;
}

}  // namespace atomexp
