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
#include <stdexcept>
#include <string>
#include <vector>

#include "qtomo/matrix_core.hpp"

namespace qtomo {

/// Observables measured at a set of time instants on copies evolving under
/// `generator`.
struct ExperimentPlan {
    std::vector<ComplexMatrix> observables;
    std::vector<double> times;
    ComplexMatrix generator;

    [[nodiscard]] Index dimension() const;
    /// Hermitian observables of matching size, strictly increasing times
    /// starting at t >= 0, and an N^2 x N^2 generator.
    void validate() const;
};

/// values(i, j) = Tr(Q_i rho(t_j)).
struct MeasurementRecord {
    Eigen::MatrixXd values;
    ExperimentPlan plan;
};

/// The reconstruction system has fewer than N^2 independent rows.
class UnderdeterminedSystem : public std::runtime_error {
public:
    UnderdeterminedSystem(int rank, int required);
    [[nodiscard]] int rank() const noexcept { return rank_; }
    [[nodiscard]] int required() const noexcept { return required_; }

private:
    int rank_;
    int required_;
};

/// Relative singular-value threshold for the ranks of stacked tomography
/// systems. Their rows carry propagator round-off, so eps * n is too tight.
inline constexpr double kTomographyRankTol = 1e-10;

/// Throws InvalidArgument unless rho is Hermitian, has unit trace and no
/// eigenvalue below -1e-10.
void validate_density_matrix(const ComplexMatrix& rho);

/// exp(t L).
[[nodiscard]] ComplexMatrix propagator(const ComplexMatrix& generator, double t);

/// rho(t) = devec(exp(t L) vec(rho0)).
[[nodiscard]] ComplexMatrix evolve(const ComplexMatrix& generator, const ComplexMatrix& rho0, double t);

/// Re Tr(Q rho); both operands must be Hermitian.
[[nodiscard]] double measure(const ComplexMatrix& observable, const ComplexMatrix& rho);

/// Dimension of span{ (L^dagger)^k vec(Q_i) : 0 <= k < mu } where mu is the
/// minimal-polynomial degree of L.
[[nodiscard]] int observability_rank(const ComplexMatrix& generator, const std::vector<ComplexMatrix>& observables,
                                     double rel_tol = kTomographyRankTol);

/// Random Hermitian matrix from the Gaussian ensemble, unit Frobenius norm.
[[nodiscard]] ComplexMatrix random_hermitian(Index n, std::uint64_t seed);

/// Density matrix A A^dagger / Tr(A A^dagger) with complex Gaussian A.
[[nodiscard]] ComplexMatrix random_density_matrix(Index n, std::uint64_t seed);

/// N^2 Hermitian matrices spanning M_N(C): E_jj, E_jk + E_kj and
/// -i E_jk + i E_kj for j < k.
[[nodiscard]] std::vector<ComplexMatrix> hermitian_basis(Index n);

struct DesignOptions {
    double horizon = 1.0;  // in units of 1 / ||L||_2
    bool include_identity = false;
};

/// `count` seeded random Hermitian observables measured at mu equally spaced
/// times in (0, horizon / ||L||_2]. With include_identity, Q_1 = I.
[[nodiscard]] ExperimentPlan design_experiment(const ComplexMatrix& generator, int count, std::uint64_t seed,
                                               const DesignOptions& options = {});

/// Plan with the given observables at mu equally spaced times.
[[nodiscard]] ExperimentPlan plan_with_observables(const ComplexMatrix& generator,
                                                   std::vector<ComplexMatrix> observables, double horizon = 1.0);

struct NoiseModel {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

[[nodiscard]] MeasurementRecord synthesize(const ExperimentPlan& plan, const ComplexMatrix& rho0,
                                           const NoiseModel& noise = {});

struct Reconstruction {
    ComplexMatrix rho;
    int rank = 0;              // rank of the stacked system, trace row included
    double residual = 0.0;     // ||A vec(rho) - m||_2 before Hermitian projection
    double min_eigenvalue = 0.0;
    bool positive_semidefinite = false;  // min eigenvalue >= -1e-10
};

/// Least-squares solve of vec(Q_i)^dagger exp(t_j L) vec(rho) = m_ij together
/// with Tr rho = 1. Throws UnderdeterminedSystem when the system rank is
/// below N^2.
[[nodiscard]] Reconstruction reconstruct(const ExperimentPlan& plan, const MeasurementRecord& record,
                                         double rel_tol = kTomographyRankTol);

}  // namespace qtomo
