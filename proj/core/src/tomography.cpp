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

#include "qtomo/tomography.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace qtomo {

namespace {

Index hilbert_dimension(const ComplexMatrix& generator) {
    if (generator.rows() != generator.cols() || generator.rows() == 0) {
        throw InvalidArgument("generator must be a non-empty square matrix");
    }
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(generator.rows()))));
    if (n * n != generator.rows()) {
        throw InvalidArgument("generator dimension " + std::to_string(generator.rows()) + " is not a perfect square");
    }
    return n;
}

std::vector<double> time_grid(const ComplexMatrix& generator, double horizon) {
    if (!(horizon > 0.0)) {
        throw InvalidArgument("horizon must be positive");
    }
    const int mu = min_poly_degree(generator);
    const double norm = spectral_norm(generator);
    const double scale = norm > 0.0 ? horizon / norm : horizon;
    std::vector<double> times;
    for (int j = 1; j <= mu; ++j) {
        times.push_back(scale * static_cast<double>(j) / static_cast<double>(mu));
    }
    return times;
}

}  // namespace

UnderdeterminedSystem::UnderdeterminedSystem(int rank, int required)
    : std::runtime_error("underdetermined reconstruction: rank " + std::to_string(rank) + " < " +
                         std::to_string(required)),
      rank_(rank),
      required_(required) {}

Index ExperimentPlan::dimension() const { return hilbert_dimension(generator); }

void ExperimentPlan::validate() const {
    const Index n = dimension();
    if (observables.empty()) throw InvalidArgument("experiment plan has no observables");
    if (times.empty()) throw InvalidArgument("experiment plan has no time instants");
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const auto& q = observables[i];
        if (q.rows() != n || q.cols() != n) {
            throw InvalidArgument("observable " + std::to_string(i + 1) + " has the wrong dimension");
        }
        if (!is_hermitian(q)) {
            throw InvalidArgument("observable " + std::to_string(i + 1) + " is not Hermitian");
        }
    }
    if (!(times.front() >= 0.0)) throw InvalidArgument("time instants must be non-negative");
    for (std::size_t j = 1; j < times.size(); ++j) {
        if (!(times[j] > times[j - 1])) throw InvalidArgument("time instants must be strictly increasing");
    }
}

void validate_density_matrix(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw InvalidArgument("density matrix must be square");
    }
    if (!is_hermitian(rho)) {
        throw InvalidArgument("density matrix must be Hermitian");
    }
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-10) {
        throw InvalidArgument("density matrix must have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw InvalidArgument("density matrix must be positive semidefinite");
    }
}

ComplexMatrix propagator(const ComplexMatrix& generator, double t) {
    if (!(t >= 0.0)) {
        throw InvalidArgument("evolution time must be non-negative");
    }
    const ComplexMatrix scaled = t * generator;
    return scaled.exp();
}

ComplexMatrix evolve(const ComplexMatrix& generator, const ComplexMatrix& rho0, double t) {
    validate_density_matrix(rho0);
    const Index n = hilbert_dimension(generator);
    if (rho0.rows() != n) {
        throw InvalidArgument("density matrix dimension does not match the generator");
    }
    return devectorize(propagator(generator, t) * vectorize(rho0), n);
}

double measure(const ComplexMatrix& observable, const ComplexMatrix& rho) {
    if (!is_hermitian(observable)) throw InvalidArgument("measure: observable must be Hermitian");
    if (!is_hermitian(rho)) throw InvalidArgument("measure: state must be Hermitian");
    if (observable.rows() != rho.rows()) throw InvalidArgument("measure: dimension mismatch");
    const Complex value = (observable * rho).trace();
    if (std::abs(value.imag()) > 1e-8) {
        throw InvalidArgument("measure: Tr(Q rho) has imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

int observability_rank(const ComplexMatrix& generator, const std::vector<ComplexMatrix>& observables,
                       double rel_tol) {
    const Index n = hilbert_dimension(generator);
    if (observables.empty()) return 0;
    const int mu = min_poly_degree(generator);
    const double norm = spectral_norm(generator);
    const ComplexMatrix heisenberg = norm > 0.0 ? ComplexMatrix(generator.adjoint() / norm) : generator.adjoint();

    ComplexMatrix krylov(n * n, static_cast<Index>(observables.size()) * mu);
    Index col = 0;
    for (const auto& q : observables) {
        if (q.rows() != n || q.cols() != n) {
            throw InvalidArgument("observability_rank: observable dimension does not match the generator");
        }
        ComplexVector v = vectorize(q);
        const double qn = v.norm();
        if (qn > 0.0) v /= qn;
        for (int k = 0; k < mu; ++k) {
            krylov.col(col++) = v;
            v = heisenberg * v;
        }
    }
    return relative_rank(krylov, rel_tol);
}

ComplexMatrix random_hermitian(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix x(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            x(i, j) = Complex{normal(rng), normal(rng)};
        }
    }
    ComplexMatrix h = 0.5 * (x + x.adjoint());
    return h / h.norm();
}

ComplexMatrix random_density_matrix(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            a(i, j) = Complex{normal(rng), normal(rng)};
        }
    }
    ComplexMatrix rho = a * a.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return rho / rho.trace().real();
}

std::vector<ComplexMatrix> hermitian_basis(Index n) {
    std::vector<ComplexMatrix> basis;
    for (Index j = 0; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(j, j) = 1.0;
        basis.push_back(e);
    }
    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            ComplexMatrix re = ComplexMatrix::Zero(n, n);
            re(j, k) = 1.0;
            re(k, j) = 1.0;
            basis.push_back(re);
            ComplexMatrix im = ComplexMatrix::Zero(n, n);
            im(j, k) = Complex{0.0, -1.0};
            im(k, j) = Complex{0.0, 1.0};
            basis.push_back(im);
        }
    }
    return basis;
}

ExperimentPlan plan_with_observables(const ComplexMatrix& generator, std::vector<ComplexMatrix> observables,
                                     double horizon) {
    ExperimentPlan plan;
    plan.generator = generator;
    plan.observables = std::move(observables);
    plan.times = time_grid(generator, horizon);
    plan.validate();
    return plan;
}

ExperimentPlan design_experiment(const ComplexMatrix& generator, int count, std::uint64_t seed,
                                 const DesignOptions& options) {
    if (count < 1) {
        throw InvalidArgument("design_experiment: observable count must be at least 1");
    }
    const Index n = hilbert_dimension(generator);
    std::mt19937_64 rng(seed);
    std::vector<ComplexMatrix> observables;
    if (options.include_identity) {
        observables.push_back(identity(n));
    }
    while (static_cast<int>(observables.size()) < count) {
        observables.push_back(random_hermitian(n, rng()));
    }
    return plan_with_observables(generator, std::move(observables), options.horizon);
}

MeasurementRecord synthesize(const ExperimentPlan& plan, const ComplexMatrix& rho0, const NoiseModel& noise) {
    plan.validate();
    validate_density_matrix(rho0);
    const Index n = plan.dimension();
    if (rho0.rows() != n) {
        throw InvalidArgument("synthesize: density matrix dimension does not match the plan");
    }
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, noise.sigma > 0.0 ? noise.sigma : 1.0);

    MeasurementRecord record;
    record.plan = plan;
    record.values.resize(static_cast<Index>(plan.observables.size()), static_cast<Index>(plan.times.size()));
    const ComplexVector v0 = vectorize(rho0);
    for (std::size_t j = 0; j < plan.times.size(); ++j) {
        const ComplexMatrix rho_t = devectorize(propagator(plan.generator, plan.times[j]) * v0, n);
        for (std::size_t i = 0; i < plan.observables.size(); ++i) {
            double m = measure(plan.observables[i], rho_t);
            if (noise.sigma > 0.0) m += gauss(rng);
            record.values(static_cast<Index>(i), static_cast<Index>(j)) = m;
        }
    }
    return record;
}

Reconstruction reconstruct(const ExperimentPlan& plan, const MeasurementRecord& record, double rel_tol) {
    plan.validate();
    const Index n = plan.dimension();
    const auto s = static_cast<Index>(plan.observables.size());
    const auto m = static_cast<Index>(plan.times.size());
    if (record.values.rows() != s || record.values.cols() != m) {
        throw InvalidArgument("reconstruct: record is " + std::to_string(record.values.rows()) + "x" +
                              std::to_string(record.values.cols()) + " but the plan expects " + std::to_string(s) +
                              "x" + std::to_string(m));
    }

    ComplexMatrix a(s * m + 1, n * n);
    ComplexVector b(s * m + 1);
    Index row = 0;
    for (Index j = 0; j < m; ++j) {
        const ComplexMatrix heisenberg = propagator(plan.generator, plan.times[static_cast<std::size_t>(j)]).adjoint();
        for (Index i = 0; i < s; ++i) {
            // Row vec(Q)^dagger P stored as the adjoint of P^dagger vec(Q).
            a.row(row) = (heisenberg * vectorize(plan.observables[static_cast<std::size_t>(i)])).adjoint();
            b(row) = record.values(i, j);
            ++row;
        }
    }
    a.row(row) = vectorize(identity(n)).adjoint();
    b(row) = 1.0;

    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > rel_tol * sv(0)) ++rank;
    }
    const int required = static_cast<int>(n * n);
    if (rank < required) {
        throw UnderdeterminedSystem(rank, required);
    }
    const ComplexVector x = svd.solve(b);

    Reconstruction out;
    out.rank = rank;
    out.residual = (a * x - b).norm();
    const ComplexMatrix raw = devectorize(x, n);
    out.rho = 0.5 * (raw + raw.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(out.rho, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    out.positive_semidefinite = out.min_eigenvalue >= -1e-10;
    return out;
}

}  // namespace qtomo
