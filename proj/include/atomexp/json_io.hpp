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

#ifndef ATOMEXP_JSON_IO_HPP_
#define ATOMEXP_JSON_IO_HPP_

#include <json.hpp>
#include <string>

#include "atomexp/condexp.hpp"
#include "atomexp/scenario.hpp"
#include "atomexp/steering.hpp"
#include "atomexp/tensorize.hpp"
#include "atomexp/vnalg.hpp"

namespace atomexp {

using Json = nlohmann::json;

// Matrices are encoded as {"rows":r,"cols":c,"data":[[re,im],...]} with the
// data row-major. Serialization uses shortest round-trip doubles, so decode
// after encode reproduces every entry bit for bit.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json scenario_to_json(const MeasurementScenario& sc);
MeasurementScenario scenario_from_json(const Json& j);

Json model_to_json(const BipartiteModel& m);
BipartiteModel model_from_json(const Json& j);

Json tensor_model_to_json(const TensorModel& t);

Json validation_report_to_json(const ValidationReport& report);
Json behavior_to_json(const Behavior& b);
Json sandwich_report_to_json(const SandwichReport& report);

/// Assemblage with its (iv)/(v) residuals.
Json assemblage_to_json(const SteeringAssemblage& s, double residual_iv,
                        double residual_v);

struct AlgebraReport {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    Eigen::Index algebra_dim = 0;
    Eigen::Index commutant_dim = 0;
    Eigen::Index center_dim = 0;
    bool has_blocks = false;
};
Json algebra_report_to_json(const AlgebraReport& report);

/// Reads a whole file; SchemaError when unreadable.
std::string read_file(const std::string& path);
Json parse_json_file(const std::string& path);

}  // namespace atomexp

#endif  // ATOMEXP_JSON_IO_HPP_
