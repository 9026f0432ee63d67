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

#ifndef ATOMEXP_TOLERANCE_HPP_
#define ATOMEXP_TOLERANCE_HPP_

namespace atomexp {

/// Central tolerance policy. Double precision at desk-scale dimensions
/// (n <= 64) leaves at least four orders of margin over these thresholds.
struct TolerancePolicy {
    /// Relative equality threshold for residual checks.
    double eps_eq = 1e-9;
    /// Singular-value cutoff factor; the effective cutoff for a matrix L is
    /// eps_rank * sigma_max(L) * max(rows, cols).
    double eps_rank = 1e-11;
    /// Relative eigenvalue clamp threshold for PSD checks and square roots.
    double eps_psd = 1e-9;
    /// Hermiticity deviation allowed before symmetrized storage.
    double eps_herm = 1e-9;

    [[nodiscard]] TolerancePolicy scaled(double factor) const {
        return TolerancePolicy{eps_eq * factor, eps_rank * factor,
                               eps_psd * factor, eps_herm * factor};
    }

    [[nodiscard]] bool valid() const {
        auto ok = [](double e) { return e > 0.0 && e < 1e-3; };
        return ok(eps_eq) && ok(eps_rank) && ok(eps_psd) && ok(eps_herm);
    }
};

}  // namespace atomexp

#endif  // ATOMEXP_TOLERANCE_HPP_
