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

#ifndef ATOMEXP_PIPELINE_HPP_
#define ATOMEXP_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atomexp/json_io.hpp"
#include "atomexp/tensorize.hpp"

namespace atomexp {

struct PipelineOptions {
    std::uint64_t seed = 0;
    Side tensor_side = Side::Alice;
    bool padding = false;
    double tol_scale = 1.0;
};

struct StageReport {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string error;  // set when the stage threw instead of reporting
    double ms = 0.0;
};

/// End-to-end verification record: model validation, W*(F), Phi, the
/// assemblage with its (iv)/(v) residuals, the Wedderburn profile, and the
/// tensor-model reproduction check. Stages after the first failure are
/// skipped.
struct PipelineReport {
    std::vector<StageReport> stages;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    std::optional<double> chsh;
    std::optional<double> chsh_tensorized;
    bool pass = false;
    std::string first_failure;
};

PipelineReport run_pipeline(const BipartiteModel& m,
                            const PipelineOptions& options = {});

/// Timing fields live under per-stage "ms" keys and are excluded from
/// golden-file comparisons via include_timing = false.
Json pipeline_report_to_json(const PipelineReport& report,
                             bool include_timing = true);

}  // namespace atomexp

#endif  // ATOMEXP_PIPELINE_HPP_
