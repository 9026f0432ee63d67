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

#ifndef ATOMEXP_RANDOM_HPP_
#define ATOMEXP_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "atomexp/matrix.hpp"

namespace atomexp {

// All randomness flows through an explicit generator passed by reference;
// there is no global RNG. Sampling is implemented on top of the raw 64-bit
// stream so results do not depend on the standard library's distributions.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 bits of precision.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch only).
inline double gaussian(Rng& rng) {
    const double u1 = 1.0 - uniform_unit(rng);  // (0, 1]
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

/// Standard complex normal, E|z|^2 = 1.
inline Complex complex_gaussian(Rng& rng) {
    const double re = gaussian(rng);
    const double im = gaussian(rng);
    return Complex(re, im) / std::sqrt(2.0);
}

/// Ginibre matrix: iid standard complex normal entries.
inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = complex_gaussian(rng);
        }
    }
    return m;
}

inline HermitianMatrix random_hermitian(Rng& rng, Eigen::Index n) {
    const CMatrix g = random_matrix(rng, n, n);
    return HermitianMatrix(0.5 * (g + g.adjoint().eval()));
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases folded into Q.
inline CMatrix random_unitary(Rng& rng, Eigen::Index n) {
    const CMatrix g = random_matrix(rng, n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

/// Random PSD matrix G G^dagger / n, spectrum O(1).
inline HermitianMatrix random_psd(Rng& rng, Eigen::Index n) {
    const CMatrix g = random_matrix(rng, n, n);
    return HermitianMatrix((g * g.adjoint()).eval() / static_cast<double>(n));
}

/// Random full-rank density operator.
inline HermitianMatrix random_density(Rng& rng, Eigen::Index n) {
    const CMatrix g = random_matrix(rng, n, n);
    CMatrix w = g * g.adjoint();
    w /= w.trace().real();
    return HermitianMatrix(w);
}

/// Random POVM with `outcomes` elements: Ginibre-squared effects normalized
/// by the inverse square root of their sum, so completeness is exact up to
/// rounding.
std::vector<HermitianMatrix> random_povm(Rng& rng, Eigen::Index n,
                                         int outcomes);

}  // namespace atomexp

#endif  // ATOMEXP_RANDOM_HPP_
