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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qtomo/matrix_core.hpp"

namespace qtomo {

enum class ModelKind { Gksl, UnitaryConjugation, PowerModel, Gaussian, VonNeumann };

[[nodiscard]] std::string to_string(ModelKind kind);
[[nodiscard]] ModelKind model_kind_from_string(const std::string& name);

struct LindbladTerm {
    ComplexMatrix op;
    double rate = 0.0;
};

/// Declarative description of an evolution model.
struct GeneratorSpec {
    ModelKind model = ModelKind::Gksl;
    std::optional<ComplexMatrix> hamiltonian;
    std::vector<LindbladTerm> lindblad;
    std::optional<ComplexMatrix> base_operator;
    std::vector<double> rates;

    /// Hilbert-space dimension N implied by the operators.
    [[nodiscard]] Index dimension() const;
};

/// Superoperator matrix (N^2 x N^2, column-stacking convention) for `spec`.
[[nodiscard]] ComplexMatrix build(const GeneratorSpec& spec);

/// L rho = -i[H, rho] + 1/2 sum_i gamma_i ([V_i rho, V_i^*] + [V_i, rho V_i^*]).
[[nodiscard]] ComplexMatrix build_gksl(const ComplexMatrix& hamiltonian, std::span<const LindbladTerm> terms);

/// (F^-1)^T (x) F + F^T (x) F^-1 - 2 I (x) I for unitary F.
[[nodiscard]] ComplexMatrix build_unitary_conjugation(const ComplexMatrix& f);

/// Which Kronecker layout build_power_model emits.
///
/// `Vectorized` is the exact column-stacking matrix of
/// rho -> -sum_k gamma_k [F^k, [F^k, rho]]:
///   -sum_k gamma_k (I (x) F^2k - 2 (F^k)^T (x) F^k + (F^2k)^T (x) I).
/// `TransposeFree` drops the transposes:
///   -sum_k gamma_k (F^2k (x) I - 2 F^k (x) F^k + I (x) F^2k),
/// which has the same spectrum, and coincides with `Vectorized` for real
/// symmetric F, but does not preserve the trace when F has complex entries.
enum class PowerLayout { Vectorized, TransposeFree };

/// Generator -sum_{k=1..N} gamma_k [F^k, [F^k, .]] for Hermitian F; `rates`
/// holds gamma_1..gamma_N.
[[nodiscard]] ComplexMatrix build_power_model(const ComplexMatrix& f, std::span<const double> rates,
                                              PowerLayout layout = PowerLayout::Vectorized);

/// -1/2 [H, [H, .]].
[[nodiscard]] ComplexMatrix build_gaussian(const ComplexMatrix& hamiltonian);

/// -i [H, .].
[[nodiscard]] ComplexMatrix build_von_neumann(const ComplexMatrix& hamiltonian);

// ---------------------------------------------------------------------------
// Spectrum models

struct GenericStructure {};

/// alpha_{i+1} / alpha_i = q.
struct GeometricRatio {
    Complex q;
};

enum class Parity { Odd, Even };

/// Arithmetic spectra symmetric about zero.
///   Odd  (r = 2u+1): alpha_1 = u c, alpha_{i+1} - alpha_i = -c.
///   Even (r = 2u):   alpha_i = u c + (1 - i) c for i <= u, u c - i c for i > u.
struct ArithmeticStep {
    double c = 1.0;
    int u = 1;
    Parity parity = Parity::Odd;
};

using SpectrumStructure = std::variant<GenericStructure, GeometricRatio, ArithmeticStep>;

/// Distinct eigenvalues alpha_1..alpha_r of an operator with multiplicities
/// n_1..n_r.
struct SpectrumModel {
    std::vector<Complex> alphas;
    std::vector<int> mults;
    SpectrumStructure structure = GenericStructure{};

    [[nodiscard]] int distinct() const { return static_cast<int>(alphas.size()); }
    [[nodiscard]] int dimension() const;

    /// Throws InvalidArgument when the fields disagree with each other or
    /// with the declared structure.
    void validate() const;
};

/// alpha_i = exp(i (i-1) theta). Rejects theta outside (0, pi/(r-1)] unless
/// `allow_collisions` is set.
[[nodiscard]] SpectrumModel geometric_model(double theta, std::vector<int> mults, bool allow_collisions = false);

[[nodiscard]] SpectrumModel arithmetic_model(Parity parity, int u, double c, std::vector<int> mults);

/// The values of an arithmetic sequence, in order alpha_1..alpha_r.
[[nodiscard]] std::vector<double> arithmetic_values(const ArithmeticStep& step);

/// Haar-like unitary from the QR factorization of a seeded complex Gaussian
/// matrix (phases of R's diagonal absorbed into Q).
[[nodiscard]] ComplexMatrix random_unitary(Index n, std::uint64_t seed);

/// U diag(alpha_i repeated n_i times) U^*, U = random_unitary(N, seed), or
/// U = I when no seed is given.
[[nodiscard]] ComplexMatrix realize(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed);

/// Unitary operator whose eigenvalues form the model's geometric sequence on
/// the unit circle.
[[nodiscard]] ComplexMatrix realize_unitary(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed,
                                            bool allow_collisions = false);

/// Hermitian operator with the model's arithmetic spectrum.
[[nodiscard]] ComplexMatrix realize_hermitian(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed);

/// Angle theta of a geometric ratio q = exp(i theta), in (-pi, pi].
[[nodiscard]] double ratio_angle(const GeometricRatio& g);

/// Recovers a spectrum model from an operator's clustered eigenvalues,
/// detecting a unit-circle geometric sequence or a symmetric arithmetic
/// sequence when present. Multiplicities are geometric multiplicities.
[[nodiscard]] SpectrumModel infer_spectrum_model(const ComplexMatrix& op);

}  // namespace qtomo
