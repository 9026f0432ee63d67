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

// Command-line front-end: every concept is independently invocable.
//
//   atomexp gen <kind> [params] --seed S --out model.json
//   atomexp validate model.json [--json]
//   atomexp behavior model.json [--json]
//   atomexp algebra model.json [--side alice|bob] [--commutant|--wedderburn]
//   atomexp expectation model.json [--side alice|bob]
//   atomexp steer model.json
//   atomexp tensorize model.json [--side alice|bob|both] [--padding]
//   atomexp pipeline (model.json | --kind <kind> [params]) [--json]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
// ATOMEXP_SEED provides the default seed; --seed wins.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "atomexp/condexp.hpp"
#include "atomexp/generators.hpp"
#include "atomexp/json_io.hpp"
#include "atomexp/pipeline.hpp"
#include "atomexp/steering.hpp"
#include "atomexp/tensorize.hpp"

namespace {

using namespace atomexp;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ATOMEXP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw SchemaError("ATOMEXP_SEED is not a valid unsigned integer");
        }
    }
    return 0;
}

TolerancePolicy scaled_tolerances(double factor) {
    const TolerancePolicy tol = TolerancePolicy{}.scaled(factor);
    if (!tol.valid()) {
        throw CLI::ValidationError(
            "--tol-scale", "scaled tolerances leave (0, 1e-3)");
    }
    return tol;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SchemaError("cannot write file: " + out_path);
    out << text << "\n";
}

struct GenOptions {
    std::string kind;
    Eigen::Index dim_a = 2;
    Eigen::Index dim_b = 3;
    Eigen::Index dim = 4;
    std::string blocks = "2x2,1x3";
    int settings = 2;
    int outcomes = 2;
    bool product_state = false;
    bool no_conjugate = false;
};

std::vector<std::pair<Eigen::Index, Eigen::Index>> parse_blocks(
    const std::string& spec) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    std::string token;
    std::istringstream stream(spec);
    while (std::getline(stream, token, ',')) {
        const auto cross = token.find('x');
        if (cross == std::string::npos) {
            throw CLI::ValidationError("--blocks", "expected AxB entries");
        }
        try {
            blocks.emplace_back(std::stoll(token.substr(0, cross)),
                                std::stoll(token.substr(cross + 1)));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--blocks", "expected AxB entries");
        }
    }
    if (blocks.empty()) {
        throw CLI::ValidationError("--blocks", "no blocks given");
    }
    return blocks;
}

BipartiteModel generate(const GenOptions& opts, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<int> outcome_list(
        static_cast<size_t>(opts.settings), opts.outcomes);
    if (opts.kind == "chsh") {
        return gen_chsh();
    }
    if (opts.kind == "hidden-tensor") {
        HiddenTensorParams params;
        params.dim_a = opts.dim_a;
        params.dim_b = opts.dim_b;
        params.alice_outcomes = outcome_list;
        params.bob_outcomes = outcome_list;
        params.conjugate = !opts.no_conjugate;
        params.product_state = opts.product_state;
        return gen_hidden_tensor(params, rng);
    }
    if (opts.kind == "direct-sum") {
        DirectSumParams params;
        params.blocks = parse_blocks(opts.blocks);
        params.alice_outcomes = outcome_list;
        params.bob_outcomes = outcome_list;
        return gen_direct_sum(params, rng);
    }
    if (opts.kind == "classical") {
        ClassicalParams params;
        params.dim = opts.dim;
        params.alice_outcomes = outcome_list;
        params.bob_outcomes = outcome_list;
        return gen_classical(params, rng);
    }
    throw CLI::ValidationError(
        "kind", "expected hidden-tensor|direct-sum|chsh|classical");
}

void add_gen_params(CLI::App* cmd, GenOptions& opts) {
    cmd->add_option("--dima", opts.dim_a, "hidden-tensor Alice factor dim");
    cmd->add_option("--dimb", opts.dim_b, "hidden-tensor Bob factor dim");
    cmd->add_option("--dim", opts.dim, "classical diagonal dimension");
    cmd->add_option("--blocks", opts.blocks,
                    "direct-sum blocks, e.g. 2x2,1x3");
    cmd->add_option("--settings", opts.settings, "settings per side")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--outcomes", opts.outcomes, "outcomes per setting")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--product-state", opts.product_state,
                  "hidden-tensor: use rho_A (x) rho_B");
    cmd->add_flag("--no-conjugate", opts.no_conjugate,
                  "hidden-tensor: skip the hiding unitary");
}

std::string render_validation_text(const ValidationReport& report) {
    std::ostringstream out;
    for (const ConditionCheck& c : report.conditions) {
        out << (c.pass ? "ok   " : "FAIL ") << c.name
            << "  residual=" << c.residual << "  threshold=" << c.threshold
            << "\n";
    }
    out << (report.pass ? "model valid" : "model INVALID");
    return out.str();
}

std::string render_pipeline_text(const PipelineReport& report) {
    std::ostringstream out;
    for (const StageReport& stage : report.stages) {
        out << (stage.pass ? "ok   " : "FAIL ") << stage.name;
        for (const auto& [key, value] : stage.metrics) {
            out << "  " << key << "=" << value;
        }
        out << "\n";
    }
    if (!report.blocks.empty()) {
        out << "blocks:";
        for (const auto& [n, m] : report.blocks) {
            out << " (" << n << "," << m << ")";
        }
        out << "\n";
    }
    out << (report.pass ? "pipeline PASS"
                        : "pipeline FAIL at stage " + report.first_failure);
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional commuting-operator model toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string model_path;
    std::string out_path;
    std::string side = "alice";
    bool as_json = false;
    bool padding = false;
    double tol_scale = 1.0;
    int exit_code = 0;

    GenOptions gen_opts;

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        if (with_model) {
            cmd->add_option("model", model_path, "model JSON file")
                ->required();
        }
        cmd->add_option("--seed", seed, "RNG seed (overrides ATOMEXP_SEED)");
        cmd->add_option("--out", out_path, "write output to file");
        cmd->add_flag("--json", as_json, "emit JSON instead of text");
        cmd->add_option("--tol-scale", tol_scale,
                        "multiply all tolerances uniformly")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a model");
    gen->add_option("kind", gen_opts.kind,
                    "hidden-tensor|direct-sum|chsh|classical")
        ->required();
    add_gen_params(gen, gen_opts);
    add_common(gen, false);
    gen->callback([&] {
        emit(model_to_json(generate(gen_opts, seed)).dump(2), out_path);
    });

    CLI::App* validate = app.add_subcommand("validate", "check (i)-(iii)");
    add_common(validate, true);
    validate->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const ValidationReport report =
            validate_model(model_from_json(parse_json_file(model_path)), tol);
        emit(as_json ? validation_report_to_json(report).dump(2)
                     : render_validation_text(report),
             out_path);
        if (!report.pass) exit_code = 1;
    });

    CLI::App* behavior_cmd =
        app.add_subcommand("behavior", "joint probability table");
    add_common(behavior_cmd, true);
    behavior_cmd->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const BipartiteModel m = model_from_json(parse_json_file(model_path));
        const Behavior b = behavior(m, tol);
        Json out = behavior_to_json(b);
        if (m.scenario.alice.size() == 2 && m.scenario.bob.size() == 2 &&
            m.scenario.alice[0].outcomes == 2 &&
            m.scenario.alice[1].outcomes == 2 &&
            m.scenario.bob[0].outcomes == 2 &&
            m.scenario.bob[1].outcomes == 2) {
            out["chsh"] = chsh_value(b);
        }
        emit(out.dump(2), out_path);
    });

    bool commutant_only = false;
    bool with_wedderburn = false;
    CLI::App* algebra_cmd =
        app.add_subcommand("algebra", "commutant / Wedderburn report");
    algebra_cmd->add_option("--side", side, "alice|bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    algebra_cmd->add_flag("--commutant", commutant_only,
                          "dimensions only, skip block factorization");
    algebra_cmd->add_flag("--wedderburn", with_wedderburn,
                          "include block factorization (default)");
    add_common(algebra_cmd, true);
    algebra_cmd->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const BipartiteModel m = model_from_json(parse_json_file(model_path));
        const std::vector<CMatrix> generators =
            povm_elements(side == "bob" ? m.bob : m.alice);
        const VNAlgebra alg = generated_algebra(m.dim, generators, tol);
        AlgebraReport report;
        report.algebra_dim = alg.algebra_dim();
        report.commutant_dim =
            commutant(m.dim, alg.basis, tol).algebra_dim();
        report.center_dim = center(alg, tol).algebra_dim();
        if (!commutant_only || with_wedderburn) {
            Rng rng(seed);
            report.blocks = wedderburn(alg, rng, tol).block_profile();
            report.has_blocks = true;
        }
        emit(algebra_report_to_json(report).dump(2), out_path);
    });

    CLI::App* expectation_cmd = app.add_subcommand(
        "expectation", "conditional expectation invariant report");
    expectation_cmd->add_option("--side", side, "alice|bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    add_common(expectation_cmd, true);
    expectation_cmd->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const BipartiteModel m = model_from_json(parse_json_file(model_path));
        // Phi targets W*(F) by default, per the sandwich hypothesis.
        const bool onto_bob = side != "alice";
        const VNAlgebra alg = generated_algebra(
            m.dim, povm_elements(onto_bob ? m.bob : m.alice), tol);
        const ConditionalExpectation phi = expectation_onto(alg, tol, true);
        const SandwichReport sandwich =
            onto_bob ? verify_sandwich(phi, m.alice, m.bob, tol)
                     : verify_sandwich(phi, m.bob, m.alice, tol);
        Json out = sandwich_report_to_json(sandwich);
        out["range_dim"] = alg.algebra_dim();
        const HermitianMatrix choi(phi.choi_matrix(), tol.eps_herm);
        out["choi_min_eigenvalue"] = min_eigenvalue(choi);
        emit(out.dump(2), out_path);
        if (!sandwich.pass) exit_code = 1;
    });

    CLI::App* steer_cmd =
        app.add_subcommand("steer", "build and verify the assemblage");
    add_common(steer_cmd, true);
    steer_cmd->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const BipartiteModel m = model_from_json(parse_json_file(model_path));
        const Behavior b = behavior(m, tol);
        const ConditionalExpectation phi = expectation_onto(
            generated_algebra(m.dim, povm_elements(m.bob), tol), tol);
        const SteeringAssemblage s = build_assemblage(m, phi, tol);
        const double iv = verify_x_independence(s);
        const double v = verify_reproduction(s, m, b);
        emit(assemblage_to_json(s, iv, v).dump(2), out_path);
        if (iv > tol.eps_eq || v > tol.eps_eq) exit_code = 1;
    });

    CLI::App* tensorize_cmd =
        app.add_subcommand("tensorize", "build the tensor-product model");
    tensorize_cmd->add_option("--side", side,
                              "alice|bob|both (both = cross-check)")
        ->check(CLI::IsMember({"alice", "bob", "both"}));
    tensorize_cmd->add_flag("--padding", padding,
                            "pad both factors to the original dimension");
    add_common(tensorize_cmd, true);
    tensorize_cmd->callback([&] {
        const TolerancePolicy tol = scaled_tolerances(tol_scale);
        const BipartiteModel m = model_from_json(parse_json_file(model_path));
        Rng rng(seed);
        if (side == "both") {
            const CrossCheckReport report = tensorize_cross_check(m, rng, tol);
            emit(Json{{"residual_alice", report.residual_alice},
                      {"residual_bob", report.residual_bob},
                      {"behavior_discrepancy", report.behavior_discrepancy}}
                     .dump(2),
                 out_path);
            if (report.residual_alice > kFactorizationTol ||
                report.residual_bob > kFactorizationTol) {
                exit_code = 1;
            }
            return;
        }
        const TensorizeOptions options{
            side == "bob" ? Side::Bob : Side::Alice, padding};
        const TensorizeResult result = tensorize(m, rng, options, tol);
        const double residual =
            verify_tensor_model(result.model, behavior(m, tol));
        Json out = tensor_model_to_json(result.model);
        out["residuals"] = Json{{"reproduction", residual}};
        emit(out.dump(2), out_path);
        if (residual > kFactorizationTol) exit_code = 1;
    });

    std::string pipeline_model;
    CLI::App* pipeline_cmd =
        app.add_subcommand("pipeline", "full verification pipeline");
    pipeline_cmd->add_option("model", pipeline_model, "model JSON file");
    pipeline_cmd->add_option("--kind", gen_opts.kind,
                             "generate instead of reading a file");
    add_gen_params(pipeline_cmd, gen_opts);
    pipeline_cmd->add_option("--side", side, "tensorization side: alice|bob")
        ->check(CLI::IsMember({"alice", "bob"}));
    pipeline_cmd->add_flag("--padding", padding,
                           "pad the tensor model factors");
    add_common(pipeline_cmd, false);
    pipeline_cmd->callback([&] {
        if (pipeline_model.empty() == gen_opts.kind.empty()) {
            throw CLI::ValidationError(
                "pipeline", "give a model file or --kind, not both/neither");
        }
        const BipartiteModel m =
            pipeline_model.empty()
                ? generate(gen_opts, seed)
                : model_from_json(parse_json_file(pipeline_model));
        PipelineOptions options;
        options.seed = seed;
        options.tensor_side = side == "bob" ? Side::Bob : Side::Alice;
        options.padding = padding;
        options.tol_scale = tol_scale;
        const PipelineReport report = run_pipeline(m, options);
        emit(as_json ? pipeline_report_to_json(report).dump(2)
                     : render_pipeline_text(report),
             out_path);
        if (!report.pass) exit_code = 1;
    });

    try {
        seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelStructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
