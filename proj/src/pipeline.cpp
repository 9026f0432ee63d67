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

#include "atomexp/pipeline.hpp"

#include <chrono>

#include "atomexp/condexp.hpp"
#include "atomexp/steering.hpp"

namespace atomexp {

namespace {

bool is_chsh_shaped(const MeasurementScenario& sc) {
    return sc.alice.size() == 2 && sc.bob.size() == 2 &&
           sc.alice[0].outcomes == 2 && sc.alice[1].outcomes == 2 &&
           sc.bob[0].outcomes == 2 && sc.bob[1].outcomes == 2;
}

}  // namespace

PipelineReport run_pipeline(const BipartiteModel& m,
                            const PipelineOptions& options) {
    const TolerancePolicy tol = TolerancePolicy{}.scaled(options.tol_scale);
    Rng rng(options.seed);
    PipelineReport report;

    // Each stage body returns pass/fail; thrown errors are recorded as a
    // failed stage rather than escaping, so the report always names the
    // first failing stage.
    auto run_stage = [&](const std::string& name, auto&& body) {
        const auto start = std::chrono::steady_clock::now();
        StageReport stage;
        stage.name = name;
        try {
            stage.pass = body(stage);
        } catch (const Error& e) {
            stage.pass = false;
            stage.error = e.what();
        }
        stage.ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
        report.stages.push_back(std::move(stage));
        if (!report.stages.back().pass && report.first_failure.empty()) {
            report.first_failure = name;
        }
        return report.stages.back().pass;
    };

    // Model hypotheses: positivity, completeness, cross-commutation.
    const bool valid = run_stage("validate", [&](StageReport& stage) {
        const ValidationReport validation = validate_model(m, tol);
        for (const ConditionCheck& c : validation.conditions) {
            stage.metrics.emplace_back(c.name, c.residual);
        }
        return validation.pass;
    });
    if (!valid) return report;

    std::optional<Behavior> b;
    const bool behaved = run_stage("behavior", [&](StageReport& stage) {
        b = behavior(m, tol);
        const Behavior::Residuals res = b->residuals();
        stage.metrics.emplace_back("range", res.range);
        stage.metrics.emplace_back("normalization", res.normalization);
        stage.metrics.emplace_back("no_signalling", res.no_signalling);
        if (is_chsh_shaped(m.scenario)) {
            report.chsh = chsh_value(*b);
            stage.metrics.emplace_back("chsh", *report.chsh);
        }
        return true;
    });
    if (!behaved) return report;

    VNAlgebra bob_algebra;
    const bool got_algebra = run_stage("bob_algebra", [&](StageReport& stage) {
        bob_algebra = generated_algebra(m.dim, povm_elements(m.bob), tol);
        const VNAlgebra comm = commutant(m.dim, bob_algebra.basis, tol);
        stage.metrics.emplace_back(
            "algebra_dim", static_cast<double>(bob_algebra.algebra_dim()));
        stage.metrics.emplace_back("commutant_dim",
                                   static_cast<double>(comm.algebra_dim()));
        return bob_algebra.contains_identity;
    });
    if (!got_algebra) return report;

    std::optional<ConditionalExpectation> phi;
    const bool sandwiched = run_stage("expectation", [&](StageReport& stage) {
        phi = expectation_onto(bob_algebra, tol);
        const SandwichReport sandwich =
            verify_sandwich(*phi, m.alice, m.bob, tol);
        stage.metrics.emplace_back("span_residual", sandwich.span_residual);
        stage.metrics.emplace_back("commutator_residual",
                                   sandwich.commutator_residual);
        return sandwich.pass;
    });
    if (!sandwiched) return report;

    const bool steered = run_stage("assemblage", [&](StageReport& stage) {
        const SteeringAssemblage assemblage = build_assemblage(m, *phi, tol);
        const double iv = verify_x_independence(assemblage);
        const double v = verify_reproduction(assemblage, m, *b);
        stage.metrics.emplace_back("residual_iv", iv);
        stage.metrics.emplace_back("residual_v", v);
        return iv <= tol.eps_eq && v <= tol.eps_eq;
    });
    if (!steered) return report;

    std::optional<WedderburnData> decomposition;
    const bool factored = run_stage("wedderburn", [&](StageReport& stage) {
        const std::vector<CMatrix> driving = povm_elements(
            options.tensor_side == Side::Alice ? m.alice : m.bob);
        const VNAlgebra alg = generated_algebra(m.dim, driving, tol);
        decomposition = wedderburn(alg, rng, tol);
        report.blocks = decomposition->block_profile();
        stage.metrics.emplace_back(
            "blocks", static_cast<double>(decomposition->blocks.size()));
        stage.metrics.emplace_back("algebra_dim",
                                   static_cast<double>(alg.algebra_dim()));
        return true;
    });
    if (!factored) return report;

    run_stage("tensorize", [&](StageReport& stage) {
        const TensorizeResult result = tensorize_with(
            m, *decomposition, {options.tensor_side, options.padding}, tol);
        const double residual = verify_tensor_model(result.model, *b);
        stage.metrics.emplace_back("reproduction_residual", residual);
        stage.metrics.emplace_back("dimA",
                                   static_cast<double>(result.model.dim_a));
        stage.metrics.emplace_back("dimB",
                                   static_cast<double>(result.model.dim_b));
        if (is_chsh_shaped(m.scenario)) {
            report.chsh_tensorized =
                chsh_value(tensor_behavior(result.model, tol));
            stage.metrics.emplace_back("chsh", *report.chsh_tensorized);
        }
        return residual <= kFactorizationTol;
    });

    report.pass = report.first_failure.empty();
    return report;
}

Json pipeline_report_to_json(const PipelineReport& report,
                             bool include_timing) {
    Json stages = Json::array();
    for (const StageReport& stage : report.stages) {
        Json metrics = Json::object();
        for (const auto& [key, value] : stage.metrics) metrics[key] = value;
        Json entry{{"name", stage.name},
                   {"pass", stage.pass},
                   {"metrics", metrics}};
        if (!stage.error.empty()) entry["error"] = stage.error;
        if (include_timing) entry["ms"] = stage.ms;
        stages.push_back(std::move(entry));
    }
    Json blocks = Json::array();
    for (const auto& [n, m] : report.blocks) {
        blocks.push_back(Json{{"n", n}, {"m", m}});
    }
    Json out{{"pass", report.pass},
             {"stages", stages},
             {"blocks", blocks},
             {"first_failure", report.first_failure}};
    if (report.chsh) out["chsh"] = *report.chsh;
    if (report.chsh_tensorized) out["chsh_tensorized"] = *report.chsh_tensorized;
    return out;
}

}  // namespace atomexp
