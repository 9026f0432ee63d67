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

#include "atomexp/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace atomexp {

namespace {

void check_structure(const BipartiteModel& m) {
    if (m.dim <= 0) {
        throw ModelStructureError("model: dimension must be positive");
    }
    if (m.scenario.alice.empty() || m.scenario.bob.empty()) {
        throw ModelStructureError("model: both parties need >= 1 setting");
    }
    if (m.alice.dim != m.dim || m.bob.dim != m.dim) {
        throw ModelStructureError(
            "model: POVM family dimension differs from model dimension");
    }
    if (m.state.matrix.dim() != m.dim) {
        throw ModelStructureError(
            "model: state dimension differs from model dimension");
    }
    auto check_side = [&](const std::vector<Setting>& settings,
                          const POVMFamily& family, const char* side) {
        if (family.elements.size() != settings.size()) {
            throw ModelStructureError(std::string("model: ") + side +
                                      " setting count mismatch");
        }
        for (size_t x = 0; x < settings.size(); ++x) {
            if (settings[x].outcomes < 1) {
                throw ModelStructureError(std::string("model: ") + side +
                                          " setting '" + settings[x].label +
                                          "' has no outcomes");
            }
            if (static_cast<int>(family.elements[x].size()) !=
                settings[x].outcomes) {
                throw ModelStructureError(std::string("model: ") + side +
                                          " outcome count mismatch at '" +
                                          settings[x].label + "'");
            }
            for (const HermitianMatrix& e : family.elements[x]) {
                if (e.dim() != m.dim) {
                    throw ModelStructureError(std::string("model: ") + side +
                                              " element dimension mismatch");
                }
            }
        }
    };
    check_side(m.scenario.alice, m.alice, "alice");
    check_side(m.scenario.bob, m.bob, "bob");
}

// Relative PSD violation: max(0, -lambda_min) / ||M||, zero matrix passes.
double psd_violation(const HermitianMatrix& m) {
    const HermitianEig eig = hermitian_eig(m);
    const Eigen::Index n = m.dim();
    const double norm = std::max(std::abs(eig.eigenvalues(0)),
                                 std::abs(eig.eigenvalues(n - 1)));
    if (norm == 0.0) return 0.0;
    return std::max(0.0, -eig.eigenvalues(0)) / norm;
}

double worst_psd_violation(const POVMFamily& family) {
    double worst = 0.0;
    for (const auto& setting : family.elements) {
        for (const HermitianMatrix& e : setting) {
            worst = std::max(worst, psd_violation(e));
        }
    }
    return worst;
}

double completeness_residual(const POVMFamily& family) {
    double worst = 0.0;
    for (const auto& setting : family.elements) {
        CMatrix sum = CMatrix::Zero(family.dim, family.dim);
        for (const HermitianMatrix& e : setting) sum += e.matrix();
        sum -= CMatrix::Identity(family.dim, family.dim);
        worst = std::max(worst, max_abs(sum));
    }
    return worst;
}

}  // namespace

double ValidationReport::residual(const std::string& name) const {
    for (const ConditionCheck& c : conditions) {
        if (c.name == name) return c.residual;
    }
    throw Error("ValidationReport: no condition named '" + name + "'");
}

ValidationReport validate_model(const BipartiteModel& m,
                                const TolerancePolicy& tol) {
    check_structure(m);

    ValidationReport report;
    auto add = [&](std::string name, double residual, double threshold) {
        report.conditions.push_back(
            {std::move(name), residual, threshold, residual <= threshold});
    };

    add("alice_psd", worst_psd_violation(m.alice), tol.eps_psd);
    add("bob_psd", worst_psd_violation(m.bob), tol.eps_psd);
    add("alice_completeness", completeness_residual(m.alice), tol.eps_eq);
    add("bob_completeness", completeness_residual(m.bob), tol.eps_eq);

    double worst_comm = 0.0;
    for (const auto& ax : m.alice.elements) {
        for (const HermitianMatrix& e : ax) {
            for (const auto& by : m.bob.elements) {
                for (const HermitianMatrix& f : by) {
                    const CMatrix c =
                        e.matrix() * f.matrix() - f.matrix() * e.matrix();
                    worst_comm = std::max(worst_comm, max_abs(c));
                }
            }
        }
    }
    add("cross_commutation", worst_comm, tol.eps_eq);

    add("state_psd", psd_violation(m.state.matrix), tol.eps_psd);
    add("state_trace", std::abs(m.state.matrix.matrix().trace().real() - 1.0),
        tol.eps_eq);

    report.pass = std::all_of(report.conditions.begin(),
                              report.conditions.end(),
                              [](const ConditionCheck& c) { return c.pass; });
    return report;
}

Behavior::Behavior(MeasurementScenario scenario,
                   std::vector<std::vector<RMatrix>> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
    if (table_.size() != scenario_.alice.size()) {
        throw ScenarioMismatch("Behavior: table rows != Alice settings");
    }
    for (size_t x = 0; x < table_.size(); ++x) {
        if (table_[x].size() != scenario_.bob.size()) {
            throw ScenarioMismatch("Behavior: table cols != Bob settings");
        }
        for (size_t y = 0; y < table_[x].size(); ++y) {
            if (table_[x][y].rows() != scenario_.alice[x].outcomes ||
                table_[x][y].cols() != scenario_.bob[y].outcomes) {
                throw ScenarioMismatch("Behavior: outcome block shape");
            }
        }
    }
}

double Behavior::alice_marginal(int x, int a) const {
    return table_.at(x).at(0).row(a).sum();
}

Behavior::Residuals Behavior::residuals() const {
    Residuals r;
    const size_t nx = scenario_.alice.size();
    const size_t ny = scenario_.bob.size();
    for (size_t x = 0; x < nx; ++x) {
        for (size_t y = 0; y < ny; ++y) {
            const RMatrix& block = table_[x][y];
            r.range = std::max(
                {r.range, -block.minCoeff(), block.maxCoeff() - 1.0, 0.0});
            r.normalization =
                std::max(r.normalization, std::abs(block.sum() - 1.0));
        }
    }
    // Alice marginals must not depend on y, and vice versa.
    for (size_t x = 0; x < nx; ++x) {
        for (int a = 0; a < scenario_.alice[x].outcomes; ++a) {
            const double ref = table_[x][0].row(a).sum();
            for (size_t y = 1; y < ny; ++y) {
                r.no_signalling = std::max(
                    r.no_signalling,
                    std::abs(table_[x][y].row(a).sum() - ref));
            }
        }
    }
    for (size_t y = 0; y < ny; ++y) {
        for (int b = 0; b < scenario_.bob[y].outcomes; ++b) {
            const double ref = table_[0][y].col(b).sum();
            for (size_t x = 1; x < nx; ++x) {
                r.no_signalling = std::max(
                    r.no_signalling,
                    std::abs(table_[x][y].col(b).sum() - ref));
            }
        }
    }
    return r;
}

Behavior behavior(const BipartiteModel& m, const TolerancePolicy& tol) {
    const ValidationReport report = validate_model(m, tol);
    if (!report.pass) {
        std::string detail;
        for (const ConditionCheck& c : report.conditions) {
            if (!c.pass) {
                detail += " " + c.name + "=" + std::to_string(c.residual);
            }
        }
        throw ValidationFailed("behavior: model failed validation:" + detail);
    }

    std::vector<std::vector<RMatrix>> table;
    table.reserve(m.scenario.alice.size());
    for (size_t x = 0; x < m.scenario.alice.size(); ++x) {
        std::vector<RMatrix> row;
        for (size_t y = 0; y < m.scenario.bob.size(); ++y) {
            RMatrix block(m.scenario.alice[x].outcomes,
                          m.scenario.bob[y].outcomes);
            for (int a = 0; a < m.scenario.alice[x].outcomes; ++a) {
                const CMatrix rho_e =
                    m.state.matrix.matrix() * m.alice.element(x, a);
                for (int b = 0; b < m.scenario.bob[y].outcomes; ++b) {
                    const Complex value =
                        trace_pairing(rho_e, m.bob.element(y, b));
                    if (std::abs(value.imag()) > tol.eps_eq) {
                        throw InternalConsistencyError(
                            "behavior: imaginary probability leakage " +
                            std::to_string(value.imag()));
                    }
                    block(a, b) = value.real();
                }
            }
            row.push_back(std::move(block));
        }
        table.push_back(std::move(row));
    }

    Behavior b(m.scenario, std::move(table));
    const Behavior::Residuals res = b.residuals();
    if (res.range > tol.eps_eq || res.normalization > tol.eps_eq ||
        res.no_signalling > tol.eps_eq) {
        throw InternalConsistencyError(
            "behavior: invariants violated after computation (range=" +
            std::to_string(res.range) +
            ", norm=" + std::to_string(res.normalization) +
            ", nosig=" + std::to_string(res.no_signalling) + ")");
    }
    return b;
}

double chsh_value(const Behavior& b) {
    const MeasurementScenario& sc = b.scenario();
    const bool shape_ok =
        sc.alice.size() == 2 && sc.bob.size() == 2 &&
        sc.alice[0].outcomes == 2 && sc.alice[1].outcomes == 2 &&
        sc.bob[0].outcomes == 2 && sc.bob[1].outcomes == 2;
    if (!shape_ok) {
        throw ScenarioMismatch(
            "chsh_value: needs a 2-setting / 2-outcome scenario");
    }
    auto correlator = [&](int x, int y) {
        double e = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int bb = 0; bb < 2; ++bb) {
                const double sign = ((a + bb) % 2 == 0) ? 1.0 : -1.0;
                e += sign * b.p(x, y, a, bb);
            }
        }
        return e;
    };
    return correlator(0, 0) + correlator(0, 1) + correlator(1, 0) -
           correlator(1, 1);
}

std::vector<CMatrix> povm_elements(const POVMFamily& family) {
    std::vector<CMatrix> out;
    for (const auto& setting : family.elements) {
        for (const HermitianMatrix& e : setting) {
            out.push_back(e.matrix());
        }
    }
    return out;
}

}  // namespace atomexp
