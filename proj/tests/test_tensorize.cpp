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

#include <algorithm>

#include "atomexp/generators.hpp"
#include "atomexp/tensorize.hpp"
#include "test_helpers.hpp"

using namespace atomexp;
using namespace atomexp::testing;

TEST_SUITE_BEGIN("tensorize");

TEST_CASE("an explicit tensor model factors back into its factors") {
    Rng rng(71);
    HiddenTensorParams params;
    params.dim_a = 2;
    params.dim_b = 3;
    params.conjugate = false;
    const BipartiteModel m = gen_hidden_tensor(params, rng);
    const Behavior b = behavior(m);

    const TensorizeResult result = tensorize(m, rng);
    CHECK(result.blocks ==
          std::vector<std::pair<Eigen::Index, Eigen::Index>>{{2, 3}});
    CHECK(result.model.dim_a == 2);
    CHECK(result.model.dim_b == 3);
    CHECK(verify_tensor_model(result.model, b) <= 1e-10);

    // The mapped elements equal the original local factors up to a unitary
    // on each factor; spectra are the invariant to compare.
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            const CMatrix local =
                partial_trace(m.alice.element(x, a), 2, 3,
                              TraceSide::Second) /
                3.0;
            const RVector expected =
                hermitian_eig(HermitianMatrix(local)).eigenvalues;
            const RVector got =
                hermitian_eig(result.model.alice.elements[x][a]).eigenvalues;
            CHECK(max_abs(expected - got) <= 1e-9);
        }
    }
}

TEST_CASE("classical models tensorize into scalar blocks") {
    Rng rng(72);
    ClassicalParams params;
    params.dim = 5;
    const BipartiteModel m = gen_classical(params, rng);
    const Behavior b = behavior(m);
    const TensorizeResult result = tensorize(m, rng);
    for (const auto& [n, mult] : result.blocks) {
        CHECK(n == 1);
        CHECK(mult == 1);
    }
    CHECK(result.model.dim_a == 5);
    CHECK(result.model.dim_b == 5);
    CHECK(verify_tensor_model(result.model, b) <= 1e-10);
}

TEST_CASE("an obfuscated CHSH model is recognized as two qubits") {
    Rng rng(73);
    const BipartiteModel m =
        conjugate_copy(gen_chsh(), random_unitary(rng, 4));
    const Behavior b = behavior(m);
    const TensorizeResult result = tensorize(m, rng);
    CHECK(result.model.dim_a == 2);
    CHECK(result.model.dim_b == 2);
    CHECK(verify_tensor_model(result.model, b) <= 1e-9);
    CHECK(std::abs(chsh_value(tensor_behavior(result.model)) -
                   2.0 * std::sqrt(2.0)) <= 1e-8);
}

TEST_CASE("verify_tensor_model measures the mixed-state replacement") {
    Rng rng(74);
    const BipartiteModel m = gen_chsh();
    const Behavior b = behavior(m);
    TensorizeResult result = tensorize(m, rng);
    const Eigen::Index da = result.model.dim_a;
    const Eigen::Index db = result.model.dim_b;
    result.model.state.matrix = HermitianMatrix(
        (CMatrix::Identity(da * db, da * db) /
         static_cast<double>(da * db))
            .eval());

    double expected = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int bb = 0; bb < 2; ++bb) {
                    const double uniform =
                        (result.model.alice.element(x, a).trace() *
                         result.model.bob.element(y, bb).trace())
                            .real() /
                        static_cast<double>(da * db);
                    expected = std::max(
                        expected, std::abs(b.p(x, y, a, bb) - uniform));
                }
            }
        }
    }
    const double reported = verify_tensor_model(result.model, b);
    CHECK(reported == doctest::Approx(expected).epsilon(1e-9));
    CHECK(reported > 0.01);  // CHSH is far from uniform
}

TEST_CASE("trivial one-outcome scenario reproduces exactly") {
    Rng rng(75);
    BipartiteModel m;
    m.scenario.alice = {{"x0", 1}};
    m.scenario.bob = {{"y0", 1}};
    m.dim = 3;
    m.alice.dim = 3;
    m.bob.dim = 3;
    m.alice.elements = {{HermitianMatrix(CMatrix::Identity(3, 3))}};
    m.bob.elements = {{HermitianMatrix(CMatrix::Identity(3, 3))}};
    m.state.matrix = random_density(rng, 3);
    const Behavior b = behavior(m);
    const TensorizeResult result = tensorize(m, rng);
    CHECK(verify_tensor_model(result.model, b) <= 1e-12);
}

TEST_CASE("tensor factors never exceed the original dimension") {
    Rng rng(76);
    for (int i = 0; i < 4; ++i) {
        const CorpusModel cm = sample_corpus_model(
            i % 2 == 0 ? "hidden-tensor" : "direct-sum", rng);
        const TensorizeResult result = tensorize(cm.model, rng);
        CHECK(result.model.dim_a <= cm.model.dim);
        CHECK(result.model.dim_b <= cm.model.dim);

        // Completeness is inherited through the direct sum.
        for (const POVMFamily* family :
             {&result.model.alice, &result.model.bob}) {
            for (const auto& setting : family->elements) {
                CMatrix sum = CMatrix::Zero(family->dim, family->dim);
                for (const HermitianMatrix& e : setting) sum += e.matrix();
                CHECK(max_abs(sum - CMatrix::Identity(family->dim,
                                                      family->dim)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("padding meets the equal-factor form without changing behavior") {
    Rng rng(77);
    HiddenTensorParams params;  // n = 6
    const BipartiteModel m = gen_hidden_tensor(params, rng);
    const Behavior b = behavior(m);
    const TensorizeResult padded =
        tensorize(m, rng, {Side::Alice, true});
    CHECK(padded.model.dim_a == 6);
    CHECK(padded.model.dim_b == 6);
    CHECK(verify_tensor_model(padded.model, b) <= 1e-8);
    CHECK(std::abs(padded.model.state.matrix.matrix().trace().real() - 1.0) <=
          1e-9);
    for (const auto& setting : padded.model.alice.elements) {
        CMatrix sum = CMatrix::Zero(6, 6);
        for (const HermitianMatrix& e : setting) sum += e.matrix();
        CHECK(max_abs(sum - CMatrix::Identity(6, 6)) <= 1e-9);
    }
}

TEST_CASE("decomposing from Bob's side works symmetrically") {
    Rng rng(78);
    HiddenTensorParams params;
    params.dim_a = 2;
    params.dim_b = 3;
    const BipartiteModel m = gen_hidden_tensor(params, rng);
    const Behavior b = behavior(m);
    const TensorizeResult result = tensorize(m, rng, {Side::Bob, false});
    CHECK(result.blocks ==
          std::vector<std::pair<Eigen::Index, Eigen::Index>>{{3, 2}});
    CHECK(result.model.dim_a == 2);
    CHECK(result.model.dim_b == 3);
    CHECK(verify_tensor_model(result.model, b) <= 1e-9);
}

TEST_CASE("cross-check compares both decompositions") {
    Rng rng(79);
    const CorpusModel cm = sample_direct_sum(rng);
    const CrossCheckReport report = tensorize_cross_check(cm.model, rng);
    CHECK(report.residual_alice <= 1e-8);
    CHECK(report.residual_bob <= 1e-8);
    CHECK(report.behavior_discrepancy <= 1e-8);
}

TEST_CASE("tensorize refuses an invalid model") {
    Rng rng(80);
    CorpusModel cm = sample_hidden_tensor(rng);
    cm.model.bob.elements[0][0] = HermitianMatrix(
        (1.5 * cm.model.bob.element(0, 0)).eval());
    CHECK_THROWS_AS((void)tensorize(cm.model, rng), ValidationFailed);
}

TEST_CASE("a mismatched decomposition is caught by the component check") {
    Rng rng(81);
    HiddenTensorParams params;
    params.dim_a = 2;
    params.dim_b = 3;
    const BipartiteModel first = gen_hidden_tensor(params, rng);
    const BipartiteModel second = gen_hidden_tensor(params, rng);
    const VNAlgebra alg = generated_algebra(6, povm_elements(first.alice));
    const WedderburnData data = wedderburn(alg, rng);
    // Decomposition of the first model's algebra cannot split the second's
    // operators into M (x) I form.
    CHECK_THROWS_AS((void)tensorize_with(second, data),
                    ComponentExtractionResidual);
}

TEST_SUITE_END();
