// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtomo/cyclicity.hpp"
#include "qtomo/generators.hpp"

namespace qtomo {

/// Which closed form a randomized trial exercises.
enum class TheoremCase { Theorem2, Theorem3Case1, Theorem3Case2, Theorem3Case3 };

[[nodiscard]] std::string to_string(TheoremCase c);
[[nodiscard]] TheoremCase theorem_case_from_string(const std::string& name);

/// One fully specified instance: replaying it rebuilds the same generator.
struct TrialInstance {
    TheoremCase theorem = TheoremCase::Theorem2;
    SpectrumModel model;
    std::vector<double> rates;  // power-model cases only
    std::uint64_t basis_seed = 0;
    std::uint64_t seed = 0;  // seed the instance was drawn from
};

/// Knobs for sample_trial; unset fields are drawn at random.
struct SamplingOptions {
    std::optional<std::vector<int>> mults;
    std::optional<double> theta;  // Theorem2 only; not range-checked here
    std::optional<double> step;   // arithmetic step c for cases 2 and 3
};

/// Draws an instance for `theorem` with Hilbert-space dimension `dim`.
///
/// Theorem2: theta uniform in [0.05, 0.95] * pi/(r-1).
/// Case 1: |alpha_i| distinct in [0.5, 1.5] with gaps >= 0.1, random signs,
/// rates uniform in [0.1, 1] or zero, with at least one odd rate nonzero.
/// Cases 2 and 3: c uniform in [0.5, 1] / u, gamma_2 in [0.1, 1], every other
/// even rate zero or in [0.1, 1], odd rates zero.
[[nodiscard]] TrialInstance sample_trial(TheoremCase theorem, int dim, std::uint64_t seed,
                                         const SamplingOptions& options = {});

/// Operator F of the instance and its generator L.
struct TrialGenerator {
    ComplexMatrix base_operator;
    ComplexMatrix generator;
};
[[nodiscard]] TrialGenerator build_trial_generator(const TrialInstance& instance);

struct TrialOutcome {
    int numeric_eta = 0;
    int formula_eta = 0;
    EtaMethod formula_method = EtaMethod::Theorem2;
    bool spectrum_match = false;
    double hermitian_residual = 0.0;
    bool geometric_equals_algebraic = false;
    std::string detail;  // first discrepancy, empty on success

    [[nodiscard]] bool eta_match() const { return numeric_eta == formula_eta; }
    [[nodiscard]] bool passed() const {
        return eta_match() && spectrum_match && hermitian_residual <= 1e-10 && geometric_equals_algebraic;
    }
};

/// Builds the generator, computes eta numerically and by closed form, and
/// compares the clustered numeric spectrum against the enumerated one.
[[nodiscard]] TrialOutcome run_trial(const TrialInstance& instance);

/// Cluster-by-cluster comparison: same number of clusters, and each expected
/// cluster matched by a numeric one of equal algebraic multiplicity whose
/// value agrees within rel_tol * max(1, max |lambda|).
[[nodiscard]] bool spectra_match(const Spectrum& numeric, const Spectrum& expected, double rel_tol,
                                 std::string* detail = nullptr);

}  // namespace qtomo
