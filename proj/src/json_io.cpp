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

#include "atomexp/json_io.hpp"

#include <fstream>
#include <sstream>

namespace atomexp {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("json: missing key '") + key + "'");
    }
    return j.at(key);
}

std::vector<std::vector<HermitianMatrix>> povm_from_json(
    const Json& j, const std::vector<Setting>& settings) {
    std::vector<std::vector<HermitianMatrix>> out;
    for (const Setting& setting : settings) {
        const Json& list = require(j, setting.label.c_str());
        if (!list.is_array() ||
            static_cast<int>(list.size()) != setting.outcomes) {
            throw SchemaError("json: POVM element count mismatch at '" +
                              setting.label + "'");
        }
        std::vector<HermitianMatrix> elements;
        for (const Json& mj : list) {
            elements.emplace_back(matrix_from_json(mj));
        }
        out.push_back(std::move(elements));
    }
    return out;
}

Json povm_to_json(const POVMFamily& family,
                  const std::vector<Setting>& settings) {
    Json out = Json::object();
    for (size_t x = 0; x < settings.size(); ++x) {
        Json list = Json::array();
        for (const HermitianMatrix& e : family.elements[x]) {
            list.push_back(matrix_to_json(e.matrix()));
        }
        out[settings[x].label] = std::move(list);
    }
    return out;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMatrix matrix_from_json(const Json& j) {
    const auto rows = require(j, "rows").get<Eigen::Index>();
    const auto cols = require(j, "cols").get<Eigen::Index>();
    const Json& data = require(j, "data");
    if (rows < 0 || cols < 0 || !data.is_array() ||
        static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw SchemaError("json: matrix data length != rows*cols");
    }
    CMatrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx) {
            const Json& entry = data.at(idx);
            if (!entry.is_array() || entry.size() != 2) {
                throw SchemaError("json: matrix entry is not [re, im]");
            }
            m(i, j2) = Complex(entry.at(0).get<double>(),
                               entry.at(1).get<double>());
        }
    }
    if (!m.allFinite()) throw SchemaError("json: non-finite matrix entry");
    return m;
}

Json scenario_to_json(const MeasurementScenario& sc) {
    auto side = [](const std::vector<Setting>& settings) {
        Json list = Json::array();
        for (const Setting& s : settings) {
            list.push_back(Json::array({s.label, s.outcomes}));
        }
        return list;
    };
    return Json{{"alice", side(sc.alice)}, {"bob", side(sc.bob)}};
}

MeasurementScenario scenario_from_json(const Json& j) {
    auto side = [&](const char* key) {
        const Json& list = require(j, key);
        if (!list.is_array() || list.empty()) {
            throw SchemaError(std::string("json: scenario '") + key +
                              "' must be a nonempty array");
        }
        std::vector<Setting> settings;
        for (const Json& entry : list) {
            if (!entry.is_array() || entry.size() != 2) {
                throw SchemaError("json: scenario entry is not [label, k]");
            }
            Setting s{entry.at(0).get<std::string>(),
                      entry.at(1).get<int>()};
            if (s.outcomes < 1) {
                throw SchemaError("json: setting '" + s.label +
                                  "' has no outcomes");
            }
            settings.push_back(std::move(s));
        }
        return settings;
    };
    return MeasurementScenario{side("alice"), side("bob")};
}

Json model_to_json(const BipartiteModel& m) {
    return Json{{"dim", m.dim},
                {"scenario", scenario_to_json(m.scenario)},
                {"alice_povms", povm_to_json(m.alice, m.scenario.alice)},
                {"bob_povms", povm_to_json(m.bob, m.scenario.bob)},
                {"state", matrix_to_json(m.state.matrix.matrix())}};
}

BipartiteModel model_from_json(const Json& j) {
    BipartiteModel m;
    m.dim = require(j, "dim").get<Eigen::Index>();
    m.scenario = scenario_from_json(require(j, "scenario"));
    m.alice.dim = m.dim;
    m.bob.dim = m.dim;
    try {
        m.alice.elements =
            povm_from_json(require(j, "alice_povms"), m.scenario.alice);
        m.bob.elements =
            povm_from_json(require(j, "bob_povms"), m.scenario.bob);
        m.state.matrix = HermitianMatrix(matrix_from_json(require(j, "state")));
    } catch (const NotHermitian& e) {
        throw SchemaError(std::string("json: ") + e.what());
    } catch (const DimensionMismatch& e) {
        throw SchemaError(std::string("json: ") + e.what());
    }
    return m;
}

Json tensor_model_to_json(const TensorModel& t) {
    return Json{{"dimA", t.dim_a},
                {"dimB", t.dim_b},
                {"scenario", scenario_to_json(t.scenario)},
                {"alice_povms", povm_to_json(t.alice, t.scenario.alice)},
                {"bob_povms", povm_to_json(t.bob, t.scenario.bob)},
                {"state", matrix_to_json(t.state.matrix.matrix())}};
}

Json validation_report_to_json(const ValidationReport& report) {
    Json conditions = Json::array();
    for (const ConditionCheck& c : report.conditions) {
        conditions.push_back(Json{{"name", c.name},
                                  {"residual", c.residual},
                                  {"threshold", c.threshold},
                                  {"pass", c.pass}});
    }
    return Json{{"pass", report.pass}, {"conditions", conditions}};
}

Json behavior_to_json(const Behavior& b) {
    Json table = Json::object();
    const MeasurementScenario& sc = b.scenario();
    for (size_t x = 0; x < sc.alice.size(); ++x) {
        Json row = Json::object();
        for (size_t y = 0; y < sc.bob.size(); ++y) {
            const RMatrix& block = b.joint(static_cast<int>(x),
                                           static_cast<int>(y));
            Json entries = Json::array();
            for (Eigen::Index a = 0; a < block.rows(); ++a) {
                Json line = Json::array();
                for (Eigen::Index bb = 0; bb < block.cols(); ++bb) {
                    line.push_back(block(a, bb));
                }
                entries.push_back(std::move(line));
            }
            row[sc.bob[y].label] = std::move(entries);
        }
        table[sc.alice[x].label] = std::move(row);
    }
    return Json{{"scenario", scenario_to_json(sc)}, {"table", table}};
}

Json sandwich_report_to_json(const SandwichReport& report) {
    return Json{{"span_residual", report.span_residual},
                {"commutator_residual", report.commutator_residual},
                {"pass", report.pass}};
}

Json assemblage_to_json(const SteeringAssemblage& s, double residual_iv,
                        double residual_v) {
    Json members = Json::object();
    for (size_t x = 0; x < s.members.size(); ++x) {
        Json row = Json::object();
        for (size_t a = 0; a < s.members[x].size(); ++a) {
            row["a" + std::to_string(a)] =
                matrix_to_json(s.members[x][a].matrix());
        }
        members[s.scenario.alice[x].label] = std::move(row);
    }
    return Json{{"barycenter", matrix_to_json(s.barycenter.matrix())},
                {"members", members},
                {"residuals", Json{{"iv", residual_iv}, {"v", residual_v}}}};
}

Json algebra_report_to_json(const AlgebraReport& report) {
    Json out{{"algebra_dim", report.algebra_dim},
             {"commutant_dim", report.commutant_dim},
             {"center_dim", report.center_dim}};
    if (report.has_blocks) {
        Json blocks = Json::array();
        for (const auto& [n, m] : report.blocks) {
            blocks.push_back(Json{{"n", n}, {"m", m}});
        }
        out["blocks"] = std::move(blocks);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Json parse_json_file(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw SchemaError("json parse error in " + path + ": " + e.what());
    }
}

}  // namespace atomexp
