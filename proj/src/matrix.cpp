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

#include "atomexp/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace atomexp {

HermitianEig hermitian_eig(const HermitianMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError(
            "hermitian_eig: eigensolver did not converge for dimension " +
            std::to_string(m.dim()));
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_norm(const HermitianMatrix& m) {
    if (m.dim() == 0) return 0.0;
    const RVector ev = hermitian_eig(m).eigenvalues;
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double min_eigenvalue(const HermitianMatrix& m) {
    return hermitian_eig(m).eigenvalues(0);
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m, const TolerancePolicy& tol) {
    const HermitianEig eig = hermitian_eig(m);
    const Eigen::Index n = m.dim();
    const double norm =
        n == 0 ? 0.0
               : std::max(std::abs(eig.eigenvalues(0)),
                          std::abs(eig.eigenvalues(n - 1)));
    const double floor = -tol.eps_psd * norm;
    if (n > 0 && eig.eigenvalues(0) < floor) {
        throw NotPositiveSemidefinite(
            "psd_sqrt: eigenvalue " + std::to_string(eig.eigenvalues(0)) +
            " below clamp threshold " + std::to_string(floor));
    }
    const RVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    CMatrix r = eig.eigenvectors * roots.asDiagonal() *
                eig.eigenvectors.adjoint();
    return HermitianMatrix(r, tol.eps_herm);
}

std::vector<CVector> nullspace_basis(const CMatrix& l,
                                     const TolerancePolicy& tol) {
    const Eigen::Index rows = l.rows();
    const Eigen::Index cols = l.cols();
    std::vector<CVector> out;
    if (cols == 0) return out;
    if (rows == 0) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            out.push_back(CVector::Unit(cols, j));
        }
        return out;
    }

    // Tall stacks are first compressed by an unpivoted QR: the R factor has
    // the same singular values and nullspace as L, and the SVD then runs on
    // a cols x cols matrix.
    CMatrix work;
    if (rows > cols) {
        Eigen::HouseholderQR<CMatrix> qr(l);
        work = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    } else {
        work = l;
    }

    const auto collect = [&](const RVector& sv, const CMatrix& v) {
        const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
        const double cutoff = tol.eps_rank * sigma_max *
                              static_cast<double>(std::max(rows, cols));
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) > cutoff) ++rank;
        std::vector<CVector> vectors;
        for (Eigen::Index j = rank; j < cols; ++j) vectors.push_back(v.col(j));
        return vectors;
    };

    // Divide-and-conquer is much faster at these sizes, but its singular
    // vectors can come out wrong for clustered complex spectra, so every
    // candidate is verified and any defect falls back to Jacobi.
    if (cols > 16) {
        Eigen::BDCSVD<CMatrix> svd(work, Eigen::ComputeFullV);
        const double sigma_max =
            svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
        std::vector<CVector> candidate =
            collect(svd.singularValues(), svd.matrixV());
        const double residual_bound =
            std::max(tol.eps_rank * sigma_max *
                         static_cast<double>(std::max(rows, cols)),
                     1e-12 * (1.0 + sigma_max));
        // Comparisons are written so that a NaN anywhere fails verification.
        bool verified = svd.singularValues().allFinite();
        for (size_t i = 0; i < candidate.size() && verified; ++i) {
            verified = candidate[i].allFinite() &&
                       (work * candidate[i]).norm() <= residual_bound;
            for (size_t j = 0; j < i && verified; ++j) {
                verified = std::abs(candidate[j].dot(candidate[i])) <= 1e-12;
            }
        }
        if (verified) return candidate;
    }

    Eigen::JacobiSVD<CMatrix> svd(work, Eigen::ComputeFullV);
    return collect(svd.singularValues(), svd.matrixV());
}

CMatrix partial_trace(const CMatrix& m, Eigen::Index d1, Eigen::Index d2,
                      TraceSide side) {
    if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
        throw DimensionMismatch("partial_trace: matrix is not (d1*d2) square");
    }
    if (side == TraceSide::Second) {
        CMatrix out = CMatrix::Zero(d1, d1);
        for (Eigen::Index i = 0; i < d1; ++i) {
            for (Eigen::Index j = 0; j < d1; ++j) {
                Complex acc = 0.0;
                for (Eigen::Index s = 0; s < d2; ++s) {
                    acc += m(i * d2 + s, j * d2 + s);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    CMatrix out = CMatrix::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d2; ++i) {
        for (Eigen::Index j = 0; j < d2; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index s = 0; s < d1; ++s) {
                acc += m(s * d2 + i, s * d2 + j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace atomexp
