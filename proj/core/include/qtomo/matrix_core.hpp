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

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot produce a trustworthy answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One group of numerically coincident eigenvalues.
struct EigenCluster {
    Complex value;      // mean of the member eigenvalues
    int algebraic = 0;  // number of eigenvalues in the cluster
    int geometric = 0;  // dim Ker(M - value I)
    double radius = 0;  // max distance of a member from `value`
};

/// Eigenvalues of a square matrix grouped into clusters, ordered by
/// (real, imag) of the cluster value.
struct Spectrum {
    std::vector<EigenCluster> clusters;
    int dim = 0;

    /// Cluster whose value lies within `tol` of `value`, if any.
    [[nodiscard]] const EigenCluster* find(Complex value, double tol) const;
    [[nodiscard]] int algebraic_total() const;
    [[nodiscard]] int geometric_total() const;
};

// Kronecker product; block (i, j) of the result equals a(i, j) * b.
[[nodiscard]] ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking: vectorize(m)[i + rows * j] == m(i, j).
[[nodiscard]] ComplexVector vectorize(const ComplexMatrix& m);
[[nodiscard]] ComplexMatrix devectorize(const ComplexVector& v, Index n);

[[nodiscard]] ComplexMatrix identity(Index n);

/// Largest |m(i,j) - conj(m(j,i))|.
[[nodiscard]] double hermitian_residual(const ComplexMatrix& m);

/// Hermitian within `tol`; default tolerance 1e-10 * ||m||_F.
[[nodiscard]] bool is_hermitian(const ComplexMatrix& m, std::optional<double> tol = std::nullopt);

/// ||m m^dagger - I||_F <= tol; default tolerance 1e-10 * ||m||_F.
[[nodiscard]] bool is_unitary(const ComplexMatrix& m, std::optional<double> tol = std::nullopt);

[[nodiscard]] double spectral_norm(const ComplexMatrix& m);

/// Singular values above `tol` (default eps * sigma_max * max(rows, cols)).
[[nodiscard]] int numerical_rank(const ComplexMatrix& m, std::optional<double> tol = std::nullopt);

/// Same as numerical_rank but with the threshold `rel_tol * sigma_max`.
[[nodiscard]] int relative_rank(const ComplexMatrix& m, double rel_tol);

/// dim Ker(m - lambda I) = n - rank(m - lambda I). Returns 0 when lambda is
/// not an eigenvalue.
[[nodiscard]] int geometric_multiplicity(const ComplexMatrix& m, Complex lambda,
                                         std::optional<double> tau_rank = std::nullopt);

/// Single-linkage grouping of complex values: two values share a group when a
/// chain of pairwise distances <= tol connects them. Groups are returned as
/// index lists ordered by the (real, imag) order of their smallest member.
[[nodiscard]] std::vector<std::vector<std::size_t>> cluster_indices(const std::vector<Complex>& values,
                                                                    double tol);

/// Raw eigenvalues; Hermitian input goes through the self-adjoint solver.
[[nodiscard]] std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Spectral norm below which a generator is treated as the zero map.
inline constexpr double kNegligibleNorm = 1e-12;

/// Default clustering tolerance for a set of eigenvalues of `m`:
/// max(1e-8 max|lambda|, 100 eps max(||m||_F, 1)).
[[nodiscard]] double default_cluster_tolerance(const std::vector<Complex>& values, const ComplexMatrix& m);

/// Clustered eigendecomposition.
///
/// Eigenvalues closer than `tau_clust` (single linkage) are merged into one
/// cluster. The geometric multiplicity of each cluster is the kernel
/// dimension of (m - value I). When `tau_rank` is not given, singular values
/// up to max(eps * sigma_max * n, tau_clust + 2 * radius) count as zero, which
/// keeps the kernel count consistent with what was merged.
[[nodiscard]] Spectrum eig_clustered(const ComplexMatrix& m, std::optional<double> tau_clust = std::nullopt,
                                     std::optional<double> tau_rank = std::nullopt);

/// Smallest d such that I, m, ..., m^d are linearly dependent.
///
/// Powers of m / ||m||_2 are orthogonalized in turn (two passes of modified
/// Gram-Schmidt); a power whose residual falls below `tol` relative to its
/// own norm is declared dependent. Matrices with norm below kNegligibleNorm
/// have degree 1.
[[nodiscard]] int min_poly_degree(const ComplexMatrix& m, double tol = 1e-9);

}  // namespace qtomo
