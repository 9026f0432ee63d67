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

#include <doctest.h>

#include "atomexp/matrix.hpp"
#include "atomexp/random.hpp"

using namespace atomexp;

TEST_SUITE_BEGIN("matrixlab");

TEST_CASE("hermitian_eig sorts a diagonal spectrum ascending") {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const HermitianEig eig = hermitian_eig(HermitianMatrix(d));
    CHECK(eig.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-14));
    // Eigenvectors are identity columns in permuted order.
    CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.eigenvectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.eigenvectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig on Pauli X") {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const HermitianEig eig = hermitian_eig(HermitianMatrix(x));
    CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(eig.eigenvectors(0, j)) ==
              doctest::Approx(inv_sqrt2).epsilon(1e-12));
        CHECK(std::abs(eig.eigenvectors(1, j)) ==
              doctest::Approx(inv_sqrt2).epsilon(1e-12));
    }
}

TEST_CASE("hermitian_eig reconstruction residual stays below 1e-10") {
    Rng rng(8);
    for (const Eigen::Index n : {2, 3, 5, 8, 16, 33, 64}) {
        const HermitianMatrix m = random_hermitian(rng, n);
        const HermitianEig eig = hermitian_eig(m);
        const CMatrix rebuilt = eig.eigenvectors *
                                eig.eigenvalues.asDiagonal() *
                                eig.eigenvectors.adjoint();
        CHECK(max_abs(rebuilt - m.matrix()) <=
              1e-10 * (1.0 + max_abs(m.matrix())));
        CHECK(max_abs(CMatrix(eig.eigenvectors.adjoint() * eig.eigenvectors) -
                      CMatrix::Identity(n, n)) <= 1e-12);
    }
}

TEST_CASE("psd_sqrt on diagonal inputs") {
    CHECK(max_abs(psd_sqrt(HermitianMatrix(CMatrix::Identity(4, 4))).matrix() -
                  CMatrix::Identity(4, 4)) <= 1e-14);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const CMatrix root = psd_sqrt(HermitianMatrix(d)).matrix();
    CHECK(std::abs(root(0, 0) - Complex(2.0)) <= 1e-13);
    CHECK(std::abs(root(1, 1) - Complex(3.0)) <= 1e-13);
    CHECK(std::abs(root(0, 1)) <= 1e-13);
}

TEST_CASE("psd_sqrt squaring oracle on a seeded PSD matrix") {
    Rng rng(6);
    const CMatrix g = random_matrix(rng, 6, 6);
    const HermitianMatrix a((g.adjoint() * g).eval());
    const CMatrix root = psd_sqrt(a).matrix();
    CHECK(max_abs(CMatrix(root * root) - a.matrix()) < 1e-10);
}

TEST_CASE("psd_sqrt scaling: sqrt(c M) = sqrt(c) sqrt(M)") {
    Rng rng(7);
    const HermitianMatrix m = random_psd(rng, 5);
    const CMatrix base = psd_sqrt(m).matrix();
    for (const double c : {4.0, 9.0}) {
        const CMatrix scaled =
            psd_sqrt(HermitianMatrix((c * m.matrix()).eval())).matrix();
        CHECK(max_abs(scaled - std::sqrt(c) * base) <=
              TolerancePolicy{}.eps_eq * (1.0 + max_abs(base)));
    }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK_THROWS_AS((void)psd_sqrt(HermitianMatrix(d)),
                    NotPositiveSemidefinite);
}

TEST_CASE("nullspace_basis of the zero matrix is a full basis") {
    const std::vector<CVector> basis =
        nullspace_basis(CMatrix::Zero(3, 3));
    REQUIRE(basis.size() == 3);
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size(); ++j) {
            const Complex inner = basis[i].dot(basis[j]);
            CHECK(std::abs(inner - (i == j ? 1.0 : 0.0)) <= 1e-13);
        }
    }
}

TEST_CASE("nullspace_basis of the identity is empty") {
    CHECK(nullspace_basis(CMatrix::Identity(4, 4)).empty());
}

TEST_CASE("nullspace_basis of a seeded rank-2 matrix") {
    Rng rng(11);
    CMatrix l = CMatrix::Zero(5, 5);
    for (int k = 0; k < 2; ++k) {
        const CMatrix u = random_matrix(rng, 5, 1);
        const CMatrix v = random_matrix(rng, 5, 1);
        l += u * v.adjoint();
    }
    const std::vector<CVector> basis = nullspace_basis(l);
    REQUIRE(basis.size() == 3);
    for (const CVector& v : basis) {
        CHECK((l * v).norm() < 1e-9);
    }
}

TEST_CASE("nullspace dimension is invariant under invertible row mixing") {
    Rng rng(12);
    CMatrix l = CMatrix::Zero(6, 6);
    for (int k = 0; k < 3; ++k) {
        l += random_matrix(rng, 6, 1) * random_matrix(rng, 6, 1).adjoint();
    }
    const size_t base = nullspace_basis(l).size();
    for (int trial = 0; trial < 3; ++trial) {
        const CMatrix mixer = random_matrix(rng, 6, 6);  // a.s. invertible
        CHECK(nullspace_basis(CMatrix(mixer * l)).size() == base);
    }
}

TEST_CASE("kron identities") {
    CHECK(max_abs(kron(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)) -
                  CMatrix::Identity(6, 6)) == 0.0);
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    b(0, 0) = 1.0;
    const CMatrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(std::abs(k(0, 0) - Complex(1.0)) == 0.0);
    CHECK(std::abs(k(1, 1)) == 0.0);
    CHECK(std::abs(k(2, 2) - Complex(2.0)) == 0.0);
    CHECK(std::abs(k(3, 3)) == 0.0);
}

TEST_CASE("kron mixed-product identity") {
    Rng rng(13);
    const CMatrix a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2);
    const CMatrix c = random_matrix(rng, 2, 2), d = random_matrix(rng, 2, 2);
    const CMatrix lhs = kron(a, b) * kron(c, d);
    const CMatrix rhs = kron(CMatrix(a * c), CMatrix(b * d));
    CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("partial_trace against the Kronecker oracle") {
    Rng rng(14);
    const CMatrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 2, 2);
    const CMatrix both = kron(a, b);
    CHECK(max_abs(partial_trace(both, 3, 2, TraceSide::Second) -
                  b.trace() * a) <= 1e-12);
    CHECK(max_abs(partial_trace(both, 3, 2, TraceSide::First) -
                  a.trace() * b) <= 1e-12);
    CHECK(std::abs(partial_trace(both, 3, 2, TraceSide::First).trace() -
                   both.trace()) <= 1e-12);
}

TEST_CASE("partial_trace of I_4 over the first qubit") {
    const CMatrix out =
        partial_trace(CMatrix::Identity(4, 4), 2, 2, TraceSide::First);
    CHECK(max_abs(out - 2.0 * CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("partial_trace of the Bell projector is maximally mixed") {
    CVector bell = CVector::Zero(4);
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3) = 1.0 / std::sqrt(2.0);
    const CMatrix rho = bell * bell.adjoint();
    const CMatrix reduced = partial_trace(rho, 2, 2, TraceSide::Second);
    CHECK(max_abs(reduced - 0.5 * CMatrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("trace_pairing basics") {
    CHECK(std::abs(trace_pairing(CMatrix::Identity(5, 5),
                                 CMatrix::Identity(5, 5)) -
                   Complex(5.0)) == 0.0);
    CMatrix p = CMatrix::Zero(2, 2), q = CMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    q(1, 1) = 1.0;
    CHECK(std::abs(trace_pairing(p, q)) == 0.0);
}

TEST_CASE("trace_pairing symmetry on seeded pairs") {
    Rng rng(15);
    const CMatrix mu = random_matrix(rng, 5, 5);
    const CMatrix t = random_matrix(rng, 5, 5);
    CHECK(std::abs(trace_pairing(mu, t) - trace_pairing(t, mu)) < 1e-12);
}

TEST_CASE("trace_pairing rejects incompatible shapes") {
    CHECK_THROWS_AS((void)trace_pairing(CMatrix::Zero(2, 3),
                                        CMatrix::Zero(2, 3)),
                    DimensionMismatch);
}

TEST_CASE("HermitianMatrix symmetrizes exactly") {
    Rng rng(16);
    CMatrix g = random_matrix(rng, 5, 5);
    const CMatrix herm = 0.5 * (g + g.adjoint().eval());
    // Nudge within tolerance and confirm storage is exactly Hermitian.
    CMatrix nudged = herm;
    nudged(0, 1) += Complex(1e-10, -1e-10);
    const HermitianMatrix m(nudged);
    CHECK(max_abs(m.matrix() - m.matrix().adjoint()) == 0.0);
}

TEST_CASE("HermitianMatrix rejects a clearly non-Hermitian input") {
    CMatrix g = CMatrix::Zero(2, 2);
    g(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianMatrix{g}, NotHermitian);
    CHECK_THROWS_AS(HermitianMatrix{CMatrix::Zero(2, 3)}, DimensionMismatch);
}

TEST_CASE("HermitianMatrix rejects non-finite entries") {
    CMatrix g = CMatrix::Zero(2, 2);
    g(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HermitianMatrix{g}, InvalidMatrix);
}

TEST_CASE("TolerancePolicy defaults and scaling") {
    const TolerancePolicy tol;
    CHECK(tol.valid());
    CHECK(tol.eps_eq == 1e-9);
    CHECK(tol.eps_rank == 1e-11);
    CHECK(tol.eps_psd == 1e-9);
    CHECK(tol.eps_herm == 1e-9);
    const TolerancePolicy loose = tol.scaled(10.0);
    CHECK(loose.eps_eq == doctest::Approx(1e-8));
    CHECK(loose.valid());
    CHECK_FALSE(tol.scaled(1e9).valid());
}

TEST_SUITE_END();
