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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qtomo/generators.hpp"
#include "qtomo/matrix_core.hpp"

namespace qtomo {

enum class EtaMethod { Numeric, Theorem2, Theorem3Case1, Theorem3Case2, Theorem3Case3 };

[[nodiscard]] std::string to_string(EtaMethod method);
[[nodiscard]] EtaMethod eta_method_from_string(const std::string& name);

/// Index of cyclicity of a generator together with the spectral data it was
/// read from.
struct CyclicityReport {
    int eta = 0;
    std::vector<Complex> attaining;  // cluster values whose kernel dimension equals eta
    Spectrum spectrum;
    int min_poly_degree = 0;
    EtaMethod method = EtaMethod::Numeric;
    std::vector<std::string> warnings;
};

struct CyclicityOptions {
    std::optional<double> tau_clust;
    std::optional<double> tau_rank;
};

/// eta = max over eigenvalues lambda of dim Ker(L - lambda I).
///
/// L must be N^2 x N^2. Clusters closer than 10 tau_clust to each other are
/// reported as a warning since their multiplicities depend on the tolerance.
[[nodiscard]] CyclicityReport index_of_cyclicity(const ComplexMatrix& generator, const CyclicityOptions& options = {});

/// delta_k = 2 sum_{i=1}^{r-k} n_i n_{i+k}, for 1 <= k <= r-1.
[[nodiscard]] int delta_k(std::span<const int> mults, int k);

/// sum_i n_i^2, the multiplicity of the zero eigenvalue of the models with a
/// pure double-commutator dissipator.
[[nodiscard]] int sum_of_squares(std::span<const int> mults);

/// Number of diagonals that can beat sum n_i^2: (r-1)/2 for odd r, (r-2)/2 for
/// even r.
[[nodiscard]] int diagonal_bound(int r);

/// eta = max{ sum n_i^2, delta_1, ..., delta_p } for the unitary-conjugation
/// generator whose F has a geometric spectrum with multiplicities `mults`.
[[nodiscard]] int eta_theorem2(std::span<const int> mults);

struct Theorem3Result {
    int eta = 0;
    EtaMethod method = EtaMethod::Theorem3Case1;
};

/// Closed form of eta for the power-model generator.
///
/// Case 1 applies as soon as some odd-indexed rate (gamma_1, gamma_3, ...) is
/// nonzero. Otherwise the arithmetic structure is required and its parity
/// selects case 2 (r = 2u+1) or case 3 (r = 2u). Throws InvalidArgument when
/// the hypotheses do not hold.
[[nodiscard]] Theorem3Result eta_theorem3(std::span<const int> mults, std::span<const double> rates,
                                          const SpectrumStructure& structure);

/// Generator family for closed-form spectra.
struct UnitaryConjugationEvolution {};
struct PowerModelEvolution {
    std::vector<double> rates;
};
using Evolution = std::variant<UnitaryConjugationEvolution, PowerModelEvolution>;

/// lambda_ij grouped by the structural identity of their formula.
struct ClosedFormSpectrum {
    Spectrum spectrum;  // geometric = algebraic for every cluster
    /// mu_ij = alpha_i / alpha_j with multiplicity n_i n_j (spectrum of
    /// F (x) F^-1); only filled for the unitary-conjugation family.
    Spectrum ratios;
};

/// Enumerates lambda_ij over all pairs of distinct eigenvalues of F:
///   unitary conjugation: alpha_j/alpha_i + alpha_i/alpha_j - 2,
///   power model:         -sum_k gamma_k (alpha_i^k - alpha_j^k)^2,
/// each with multiplicity n_i n_j. Pairs are first grouped by index
/// structure: for geometric spectra by |i - j|; for the power model by the
/// pair of |alpha| (even rates only) or the unordered pair {i, j}; zero
/// collects every pair whose formula vanishes identically. Groups whose
/// values still agree to 1e-9 relative are then merged.
[[nodiscard]] ClosedFormSpectrum closed_form_spectrum(const SpectrumModel& model, const Evolution& evolution);

/// Closed-form eta for a model/evolution pair, or nullopt when no closed form
/// applies (with the reason in `why_not`). Case 1 of the power model is
/// refused when the closed-form spectrum shows a coincidence among nonzero
/// pair values larger than sum n_i^2.
struct ClosedFormEta {
    int eta = 0;
    EtaMethod method = EtaMethod::Theorem2;
};
[[nodiscard]] std::optional<ClosedFormEta> closed_form_eta(const SpectrumModel& model, const Evolution& evolution,
                                                           std::string* why_not = nullptr);

/// All ordered tuples of `parts` positive integers summing to `total`.
[[nodiscard]] std::vector<std::vector<int>> compositions(int total, int parts);

/// All compositions of `total` into any number of parts.
[[nodiscard]] std::vector<std::vector<int>> compositions(int total);

}  // namespace qtomo
