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

#include "atomexp/random.hpp"

namespace atomexp {

std::vector<HermitianMatrix> random_povm(Rng& rng, Eigen::Index n,
                                         int outcomes) {
    if (n <= 0 || outcomes < 1) {
        throw DimensionMismatch("random_povm: need n >= 1 and outcomes >= 1");
    }
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<CMatrix> effects;
        CMatrix sum = CMatrix::Zero(n, n);
        for (int a = 0; a < outcomes; ++a) {
            const CMatrix g = random_matrix(rng, n, n);
            effects.push_back((g * g.adjoint()).eval());
            sum += effects.back();
        }
        const HermitianEig eig = hermitian_eig(HermitianMatrix(sum));
        if (eig.eigenvalues(0) <= 1e-10 * eig.eigenvalues(n - 1)) {
            continue;  // nearly singular normalizer, resample
        }
        const CMatrix inv_root = eig.eigenvectors *
                                 eig.eigenvalues.cwiseSqrt().cwiseInverse()
                                     .asDiagonal() *
                                 eig.eigenvectors.adjoint();
        std::vector<HermitianMatrix> povm;
        for (const CMatrix& e : effects) {
            povm.emplace_back((inv_root * e * inv_root).eval());
        }
        return povm;
    }
    throw RetriesExhausted("random_povm: singular normalizer persisted");
}

}  // namespace atomexp
