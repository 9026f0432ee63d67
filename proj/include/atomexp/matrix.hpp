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

#ifndef ATOMEXP_MATRIX_HPP_
#define ATOMEXP_MATRIX_HPP_

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "atomexp/errors.hpp"
#include "atomexp/tolerance.hpp"

namespace atomexp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Largest entry magnitude; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.derived().cwiseAbs().maxCoeff();
}

/// Hilbert-Schmidt (Frobenius) norm.
template <typename Derived>
double hs_norm(const Eigen::MatrixBase<Derived>& m) {
    return m.derived().norm();
}

/// Hilbert-Schmidt inner product tr(A^dagger B).
template <typename DerivedA, typename DerivedB>
Complex hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
    return (a.derived().conjugate().cwiseProduct(b.derived())).sum();
}

/// A square complex matrix kept exactly Hermitian: construction checks
/// ||M - M^dagger||_max against eps_herm and stores (M + M^dagger)/2, which
/// is Hermitian to the last bit in IEEE arithmetic.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const CMatrix& m,
                             double eps_herm = TolerancePolicy{}.eps_herm) {
        if (m.rows() != m.cols()) {
            throw DimensionMismatch("HermitianMatrix: " +
                                    std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " not square");
        }
        if (!m.allFinite()) {
            throw InvalidMatrix("HermitianMatrix: non-finite entries");
        }
        const double dev = max_abs(m - m.adjoint());
        if (dev > eps_herm) {
            throw NotHermitian("HermitianMatrix: ||M - M^dagger||_max = " +
                               std::to_string(dev) + " exceeds " +
                               std::to_string(eps_herm));
        }
        m_ = 0.5 * (m + m.adjoint().eval());
    }

    [[nodiscard]] const CMatrix& matrix() const { return m_; }
    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

  private:
    CMatrix m_;
};

struct HermitianEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

/// Full spectral decomposition of a Hermitian matrix.
HermitianEig hermitian_eig(const HermitianMatrix& m);

/// Largest |eigenvalue| (operator norm for Hermitian input).
double spectral_norm(const HermitianMatrix& m);

/// Smallest eigenvalue.
double min_eigenvalue(const HermitianMatrix& m);

/// PSD square root. Eigenvalues in [-eps_psd*||M||, 0) are clamped to zero;
/// anything below that throws NotPositiveSemidefinite.
HermitianMatrix psd_sqrt(const HermitianMatrix& m,
                         const TolerancePolicy& tol = {});

/// Orthonormal basis of {v : Lv = 0}. A singular value counts as zero when
/// sigma <= eps_rank * sigma_max * max(rows, cols). Empty result for a
/// trivial nullspace.
std::vector<CVector> nullspace_basis(const CMatrix& l,
                                     const TolerancePolicy& tol = {});

/// Kronecker product, dims multiply.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    static_assert(std::is_same_v<typename DerivedA::Scalar,
                                 typename DerivedB::Scalar>,
                  "kron: mixed scalar types");
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
        out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b.derived();
        }
    }
    return out;
}

enum class TraceSide {
    First,   // trace out the first tensor factor, result is d2 x d2
    Second,  // trace out the second tensor factor, result is d1 x d1
};

/// Partial trace of a (d1*d2) x (d1*d2) matrix over one tensor factor.
CMatrix partial_trace(const CMatrix& m, Eigen::Index d1, Eigen::Index d2,
                      TraceSide side);

/// Trace pairing <mu, T> = tr(mu T). Shapes must be mu: r x c, T: c x r.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar trace_pairing(const Eigen::MatrixBase<DerivedA>& mu,
                                        const Eigen::MatrixBase<DerivedB>& t) {
    if (mu.cols() != t.rows() || mu.rows() != t.cols()) {
        throw DimensionMismatch("trace_pairing: incompatible shapes");
    }
    // tr(mu T) = sum_ij mu_ij T_ji, evaluated without forming the product.
    return (mu.derived().cwiseProduct(t.derived().transpose())).sum();
}

}  // namespace atomexp

#endif  // ATOMEXP_MATRIX_HPP_
