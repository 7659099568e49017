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

#include "qtomo/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qtomo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
    }
}

// Descending. Hermitian input goes through the self-adjoint solver, whose
// |eigenvalues| are the singular values; symmetrizing moves them by at most
// the residual, which is capped at 100 eps ||m||_F.
Eigen::VectorXd singular_values(const ComplexMatrix& m) {
    if (m.rows() == m.cols() && m.rows() > 0 && hermitian_residual(m) <= 100.0 * kEps * m.norm()) {
        const ComplexMatrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        Eigen::VectorXd s = es.eigenvalues().cwiseAbs();
        std::sort(s.begin(), s.end(), std::greater<>());
        return s;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

// Disjoint-set forest over eigenvalue indices.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

const EigenCluster* Spectrum::find(Complex value, double tol) const {
    const EigenCluster* best = nullptr;
    double best_dist = tol;
    for (const auto& c : clusters) {
        const double d = std::abs(c.value - value);
        if (d <= best_dist) {
            best = &c;
            best_dist = d;
        }
    }
    return best;
}

int Spectrum::algebraic_total() const {
    int total = 0;
    for (const auto& c : clusters) total += c.algebraic;
    return total;
}

int Spectrum::geometric_total() const {
    int total = 0;
    for (const auto& c : clusters) total += c.geometric;
    return total;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector vectorize(const ComplexMatrix& m) {
    // Eigen storage is column-major, so the reshaped view is column stacking.
    return m.reshaped();
}

ComplexMatrix devectorize(const ComplexVector& v, Index n) {
    if (n <= 0 || v.size() != n * n) {
        throw InvalidArgument("devectorize: vector length " + std::to_string(v.size()) +
                              " is not n^2 for n = " + std::to_string(n));
    }
    return v.reshaped(n, n);
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

double hermitian_residual(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, std::optional<double> tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return false;
    }
    const double t = tol.value_or(1e-10 * m.norm());
    return hermitian_residual(m) <= t;
}

bool is_unitary(const ComplexMatrix& m, std::optional<double> tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return false;
    }
    const double t = tol.value_or(1e-10 * m.norm());
    return (m * m.adjoint() - identity(m.rows())).norm() <= t;
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    const auto s = singular_values(m);
    return s.size() > 0 ? s(0) : 0.0;
}

int numerical_rank(const ComplexMatrix& m, std::optional<double> tol) {
    if (m.size() == 0) {
        return 0;
    }
    const auto s = singular_values(m);
    const double smax = s.size() > 0 ? s(0) : 0.0;
    const double t = tol.value_or(kEps * smax * static_cast<double>(std::max(m.rows(), m.cols())));
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > t) ++rank;
    }
    return rank;
}

int relative_rank(const ComplexMatrix& m, double rel_tol) {
    if (m.size() == 0) {
        return 0;
    }
    const auto s = singular_values(m);
    const double smax = s.size() > 0 ? s(0) : 0.0;
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
        if (s(i) > rel_tol * smax) ++rank;
    }
    return rank;
}

int geometric_multiplicity(const ComplexMatrix& m, Complex lambda, std::optional<double> tau_rank) {
    require_square(m, "geometric_multiplicity");
    const ComplexMatrix shifted = m - lambda * identity(m.rows());
    return static_cast<int>(m.rows()) - numerical_rank(shifted, tau_rank);
}

std::vector<std::vector<std::size_t>> cluster_indices(const std::vector<Complex>& values, double tol) {
    const std::size_t n = values.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= tol) {
                uf.unite(i, j);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = uf.find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::ptrdiff_t>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    for (auto& g : groups) {
        std::sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) { return complex_less(values[a], values[b]); });
    }
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        return complex_less(values[a.front()], values[b.front()]);
    });
    return groups;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
    require_square(m, "eigenvalues");
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    if (is_hermitian(m)) {
        const ComplexMatrix sym = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigenvalues: self-adjoint eigensolver did not converge");
        }
        for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
            out.emplace_back(solver.eigenvalues()(i), 0.0);
        }
    } else {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigenvalues: complex eigensolver did not converge");
        }
        for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
            out.push_back(solver.eigenvalues()(i));
        }
    }
    return out;
}

double default_cluster_tolerance(const std::vector<Complex>& values, const ComplexMatrix& m) {
    double max_abs = 0.0;
    for (const auto& v : values) max_abs = std::max(max_abs, std::abs(v));
    // Generators are assumed to be of order one, so round-off never falls
    // below eps even when M itself is numerically zero.
    const double floor = 100.0 * kEps * std::max(m.norm(), 1.0);
    return std::max(1e-8 * max_abs, floor);
}

Spectrum eig_clustered(const ComplexMatrix& m, std::optional<double> tau_clust, std::optional<double> tau_rank) {
    require_square(m, "eig_clustered");
    const auto values = eigenvalues(m);
    const double tol = tau_clust.value_or(default_cluster_tolerance(values, m));
    const auto groups = cluster_indices(values, tol);

    const double n = static_cast<double>(m.rows());
    const double base_rank_tol = kEps * spectral_norm(m) * n;

    Spectrum spectrum;
    spectrum.dim = static_cast<int>(m.rows());
    for (const auto& g : groups) {
        EigenCluster c;
        Complex sum{0.0, 0.0};
        for (auto i : g) sum += values[i];
        c.value = sum / static_cast<double>(g.size());
        c.algebraic = static_cast<int>(g.size());
        for (auto i : g) c.radius = std::max(c.radius, std::abs(values[i] - c.value));

        const ComplexMatrix shifted = m - c.value * identity(m.rows());
        const double rank_tol =
            tau_rank.value_or(std::max(kEps * spectral_norm(shifted) * n, std::max(base_rank_tol, tol + 2.0 * c.radius)));
        const int geo = static_cast<int>(m.rows()) - numerical_rank(shifted, rank_tol);
        // A kernel larger than the cluster means the threshold swallowed a
        // neighbouring eigenvalue; the cluster size is the honest bound.
        c.geometric = std::clamp(geo, 1, c.algebraic);
        spectrum.clusters.push_back(c);
    }
    return spectrum;
}

int min_poly_degree(const ComplexMatrix& m, double tol) {
    require_square(m, "min_poly_degree");
    const Index n = m.rows();
    const double norm = spectral_norm(m);
    if (norm <= kNegligibleNorm) {
        return 1;
    }
    const ComplexMatrix scaled = m / norm;

    // Arnoldi on X -> scaled * X starting from I; spans {I, M, M^2, ...}.
    std::vector<ComplexVector> basis;
    ComplexVector start = vectorize(identity(n));
    basis.push_back(start / start.norm());
    for (Index d = 1; d <= n * n; ++d) {
        ComplexVector w = vectorize(scaled * devectorize(basis.back(), n));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                w -= q.dot(w) * q;
            }
        }
        // ||scaled||_2 = 1, so the residual is already relative.
        if (w.norm() <= tol) {
            return static_cast<int>(d);
        }
        basis.push_back(w / w.norm());
    }
    return static_cast<int>(n * n);
}

}  // namespace qtomo
