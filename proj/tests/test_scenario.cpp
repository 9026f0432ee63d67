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

#include "atomexp/generators.hpp"
#include "atomexp/scenario.hpp"
#include "test_helpers.hpp"

using namespace atomexp;
using namespace atomexp::testing;

namespace {

// Minimal commuting model on C^2 with both POVMs diagonal.
BipartiteModel diagonal_pair_model() {
    BipartiteModel m;
    m.scenario.alice = {{"x0", 2}};
    m.scenario.bob = {{"y0", 2}};
    m.dim = 2;
    m.alice.dim = 2;
    m.bob.dim = 2;
    CMatrix e0 = CMatrix::Zero(2, 2);
    e0(0, 0) = 0.6;
    e0(1, 1) = 0.4;
    m.alice.elements = {{HermitianMatrix(e0),
                         HermitianMatrix(CMatrix::Identity(2, 2) - e0)}};
    CMatrix f0 = CMatrix::Zero(2, 2);
    f0(0, 0) = 0.3;
    f0(1, 1) = 0.7;
    m.bob.elements = {{HermitianMatrix(f0),
                       HermitianMatrix(CMatrix::Identity(2, 2) - f0)}};
    m.state.matrix = HermitianMatrix(0.5 * CMatrix::Identity(2, 2));
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("CHSH model validates with tiny residuals") {
    const ValidationReport report = validate_model(gen_chsh());
    CHECK(report.pass);
    for (const ConditionCheck& c : report.conditions) {
        CHECK(c.residual < 1e-12);
    }
}

TEST_CASE("non-projective POVM passes with exact completeness") {
    BipartiteModel m = diagonal_pair_model();
    // E^0_0 = I/2 + diag(0.1, -0.1), E^0_1 its complement.
    CMatrix bump = CMatrix::Zero(2, 2);
    bump(0, 0) = 0.1;
    bump(1, 1) = -0.1;
    const CMatrix e0 = 0.5 * CMatrix::Identity(2, 2) + bump;
    m.alice.elements = {{HermitianMatrix(e0),
                         HermitianMatrix(CMatrix::Identity(2, 2) - e0)}};
    const ValidationReport report = validate_model(m);
    CHECK(report.pass);
    CHECK(report.residual("alice_completeness") == 0.0);
    CHECK(report.residual("cross_commutation") == 0.0);
}

TEST_CASE("broken commutation is reported at the perturbation scale") {
    BipartiteModel m = diagonal_pair_model();
    CMatrix off = CMatrix::Zero(2, 2);
    off(0, 1) = 1e-3;
    off(1, 0) = 1e-3;
    const CMatrix f0 = m.bob.element(0, 0) + off;
    m.bob.elements = {{HermitianMatrix(f0),
                       HermitianMatrix(CMatrix::Identity(2, 2) - f0)}};
    const ValidationReport report = validate_model(m);
    CHECK_FALSE(report.pass);
    const double res = report.residual("cross_commutation");
    CHECK(res > 1e-5);
    CHECK(res < 1e-2);
}

TEST_CASE("structural mismatch throws before numerics") {
    BipartiteModel m = diagonal_pair_model();
    m.state.matrix = HermitianMatrix(CMatrix::Identity(3, 3) / 3.0);
    CHECK_THROWS_AS((void)validate_model(m), ModelStructureError);
}

TEST_CASE("behavior factorizes on product models") {
    Rng rng(21);
    HiddenTensorParams params;
    params.dim_a = 2;
    params.dim_b = 2;
    params.conjugate = false;
    params.product_state = true;
    const BipartiteModel m = gen_hidden_tensor(params, rng);
    const Behavior b = behavior(m);

    // Recover the local factors and multiply marginals by hand.
    const CMatrix rho_a =
        partial_trace(m.state.matrix.matrix(), 2, 2, TraceSide::Second);
    const CMatrix rho_b =
        partial_trace(m.state.matrix.matrix(), 2, 2, TraceSide::First);
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            const CMatrix e =
                partial_trace(m.alice.element(x, a), 2, 2, TraceSide::Second) /
                2.0;
            for (int y = 0; y < 2; ++y) {
                for (int bb = 0; bb < 2; ++bb) {
                    const CMatrix f = partial_trace(m.bob.element(y, bb), 2, 2,
                                                    TraceSide::First) /
                                      2.0;
                    const double expected =
                        (trace_pairing(rho_a, e) * trace_pairing(rho_b, f))
                            .real();
                    CHECK(std::abs(b.p(x, y, a, bb) - expected) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("behavior reduces to tr(EF)/n on the maximally mixed state") {
    BipartiteModel m = gen_chsh();
    m.state.matrix = HermitianMatrix(CMatrix::Identity(4, 4) / 4.0);
    const Behavior b = behavior(m);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int bb = 0; bb < 2; ++bb) {
                    const double expected =
                        trace_pairing(m.alice.element(x, a),
                                      m.bob.element(y, bb))
                            .real() /
                        4.0;
                    CHECK(std::abs(b.p(x, y, a, bb) - expected) <= 1e-13);
                }
            }
        }
    }
}

TEST_CASE("CHSH behavior hits the Tsirelson point") {
    const Behavior b = behavior(gen_chsh());
    const double expected = (1.0 + 1.0 / std::sqrt(2.0)) / 4.0;
    CHECK(std::abs(b.p(0, 0, 0, 0) - expected) <= 1e-12);
    CHECK(std::abs(chsh_value(b) - 2.0 * std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("chsh_value on hand-built tables") {
    MeasurementScenario sc;
    sc.alice = {{"x0", 2}, {"x1", 2}};
    sc.bob = {{"y0", 2}, {"y1", 2}};

    RMatrix deterministic = RMatrix::Zero(2, 2);
    deterministic(0, 0) = 1.0;
    const Behavior local(sc, {{deterministic, deterministic},
                              {deterministic, deterministic}});
    CHECK(chsh_value(local) == 2.0);

    const RMatrix uniform = RMatrix::Constant(2, 2, 0.25);
    const Behavior flat(sc, {{uniform, uniform}, {uniform, uniform}});
    CHECK(chsh_value(flat) == 0.0);
}

TEST_CASE("chsh_value rejects other scenario shapes") {
    const Behavior b = behavior(diagonal_pair_model());
    CHECK_THROWS_AS((void)chsh_value(b), ScenarioMismatch);
}

TEST_CASE("behavior invariants hold on seeded generator output") {
    Rng rng(22);
    for (int i = 0; i < 8; ++i) {
        const CorpusModel cm = sample_corpus_model(
            i % 2 == 0 ? "hidden-tensor" : "direct-sum", rng);
        const Behavior b = behavior(cm.model);
        const Behavior::Residuals res = b.residuals();
        CHECK(res.range <= 1e-9);
        CHECK(res.normalization <= 1e-9);
        CHECK(res.no_signalling <= 1e-9);
    }
}

TEST_CASE("behavior is invariant under global unitary conjugation") {
    Rng rng(23);
    const CorpusModel cm = sample_hidden_tensor(rng);
    const Behavior base = behavior(cm.model);
    const BipartiteModel rotated =
        conjugate_copy(cm.model, random_unitary(rng, cm.model.dim));
    const Behavior moved = behavior(rotated);
    const auto& sc = cm.model.scenario;
    for (size_t x = 0; x < sc.alice.size(); ++x) {
        for (size_t y = 0; y < sc.bob.size(); ++y) {
            CHECK(max_abs(base.joint(static_cast<int>(x),
                                     static_cast<int>(y)) -
                          moved.joint(static_cast<int>(x),
                                      static_cast<int>(y))) <= 1e-10);
        }
    }
}

TEST_CASE("relabeling outcomes permutes the table exactly") {
    Rng rng(24);
    const CorpusModel cm = sample_hidden_tensor(rng);
    BipartiteModel swapped = cm.model;
    std::swap(swapped.alice.elements[0][0], swapped.alice.elements[0][1]);
    const Behavior base = behavior(cm.model);
    const Behavior perm = behavior(swapped);
    for (size_t y = 0; y < cm.model.scenario.bob.size(); ++y) {
        for (int bb = 0; bb < cm.model.scenario.bob[y].outcomes; ++bb) {
            CHECK(base.p(0, static_cast<int>(y), 0, bb) ==
                  perm.p(0, static_cast<int>(y), 1, bb));
            CHECK(base.p(0, static_cast<int>(y), 1, bb) ==
                  perm.p(0, static_cast<int>(y), 0, bb));
        }
    }
}

TEST_CASE("behavior refuses models that fail validation") {
    BipartiteModel m = diagonal_pair_model();
    // Break Bob completeness.
    m.bob.elements[0][1] =
        HermitianMatrix((1.1 * m.bob.element(0, 1)).eval());
    CHECK_THROWS_AS((void)behavior(m), ValidationFailed);
}

TEST_SUITE_END();
