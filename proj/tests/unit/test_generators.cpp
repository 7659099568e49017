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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qtomo/cyclicity.hpp"
#include "qtomo/generators.hpp"
#include "qtomo/tomography.hpp"
#include "support/oracles.hpp"

using namespace qtomo;
using oracle::commutator;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> values) {
    ComplexVector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (auto x : values) v(i++) = x;
    return v.asDiagonal();
}

ComplexMatrix random_matrix(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) m(i, j) = Complex{normal(rng), normal(rng)};
    return m;
}

ComplexMatrix random_herm(Index n, std::mt19937_64& rng) {
    const auto x = random_matrix(n, rng);
    return 0.5 * (x + x.adjoint());
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

int multiplicity_near(const Spectrum& s, Complex value, double tol = 1e-9) {
    const auto* c = s.find(value, tol);
    return c == nullptr ? 0 : c->algebraic;
}

}  // namespace

// --- GKSL -------------------------------------------------------------------

TEST(BuildGksl, IdentityLindbladOperatorVanishes) {
    const std::vector<LindbladTerm> terms{{identity(2), 1.0}};
    EXPECT_LT(max_abs(build_gksl(ComplexMatrix::Zero(2, 2), terms)), 1e-15);
}

TEST(BuildGksl, DephasingSpectrum) {
    const std::vector<LindbladTerm> terms{{diag({1.0, -1.0}), 1.0}};
    const auto s = eig_clustered(build_gksl(ComplexMatrix::Zero(2, 2), terms));
    EXPECT_EQ(multiplicity_near(s, 0.0), 2);
    EXPECT_EQ(multiplicity_near(s, -2.0), 2);
}

TEST(BuildGksl, HamiltonianOnlySpectrum) {
    const auto s = eig_clustered(build_gksl(diag({1.0, -1.0}), {}));
    EXPECT_EQ(multiplicity_near(s, 0.0), 2);
    EXPECT_EQ(multiplicity_near(s, Complex{0.0, 2.0}), 1);
    EXPECT_EQ(multiplicity_near(s, Complex{0.0, -2.0}), 1);
}

TEST(BuildGksl, MatchesMatrixUnitEvaluation) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const Index n = 2 + trial % 3;
        const auto h = random_herm(n, rng);
        std::vector<LindbladTerm> terms;
        for (int k = 0; k < 3; ++k) terms.push_back({random_matrix(n, rng), 0.2 + 0.3 * k});
        const auto reference = oracle::superoperator_from_map(n, [&](const ComplexMatrix& rho) {
            ComplexMatrix out = Complex{0.0, -1.0} * commutator(h, rho);
            for (const auto& t : terms) {
                const ComplexMatrix& v = t.op;
                out += 0.5 * t.rate * (commutator(v * rho, v.adjoint()) + commutator(v, rho * v.adjoint()));
            }
            return out;
        });
        EXPECT_LT(max_abs(build_gksl(h, terms) - reference), 1e-12);
    }
}

TEST(BuildGksl, RejectsInvalidInput) {
    ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
    not_hermitian(0, 1) = 1.0;
    EXPECT_THROW((void)build_gksl(not_hermitian, {}), InvalidArgument);
    const std::vector<LindbladTerm> negative{{identity(2), -0.1}};
    EXPECT_THROW((void)build_gksl(ComplexMatrix::Zero(2, 2), negative), InvalidArgument);
    const std::vector<LindbladTerm> mismatched{{identity(3), 1.0}};
    EXPECT_THROW((void)build_gksl(ComplexMatrix::Zero(2, 2), mismatched), InvalidArgument);
}

// --- unitary conjugation ----------------------------------------------------

TEST(BuildUnitaryConjugation, IdentityGivesZero) {
    EXPECT_LT(max_abs(build_unitary_conjugation(identity(3))), 1e-15);
}

TEST(BuildUnitaryConjugation, TwoLevelSpectrum) {
    const auto s = eig_clustered(build_unitary_conjugation(diag({1.0, std::polar(1.0, 0.7)})));
    ASSERT_EQ(s.clusters.size(), 2u);
    EXPECT_EQ(multiplicity_near(s, 0.0), 2);
    EXPECT_EQ(multiplicity_near(s, 2.0 * std::cos(0.7) - 2.0), 2);
}

TEST(BuildUnitaryConjugation, ThreeLevelMultiplicities) {
    const auto s = eig_clustered(
        build_unitary_conjugation(diag({1.0, std::polar(1.0, 0.7), std::polar(1.0, 1.4)})));
    EXPECT_EQ(multiplicity_near(s, 0.0), 3);
    EXPECT_EQ(multiplicity_near(s, 2.0 * std::cos(0.7) - 2.0), 4);
    EXPECT_EQ(multiplicity_near(s, 2.0 * std::cos(1.4) - 2.0), 2);
}

TEST(BuildUnitaryConjugation, AgreesWithGkslAndDoubleCommutatorForm) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 2 + trial % 4;
        const auto f = random_unitary(n, rng());
        const auto l = build_unitary_conjugation(f);
        const std::vector<LindbladTerm> terms{{f, 1.0}, {f.adjoint(), 1.0}};
        EXPECT_LT(max_abs(l - build_gksl(ComplexMatrix::Zero(n, n), terms)), 1e-10);

        const ComplexMatrix fd = f.adjoint();
        const auto reference = oracle::superoperator_from_map(n, [&](const ComplexMatrix& rho) {
            return ComplexMatrix(-0.5 * (commutator(fd, commutator(f, rho)) + commutator(f, commutator(fd, rho))));
        });
        EXPECT_LT(max_abs(l - reference), 1e-10);
        EXPECT_LE(hermitian_residual(l), 1e-10);
    }
}

TEST(BuildUnitaryConjugation, RejectsNonUnitary) {
    EXPECT_THROW((void)build_unitary_conjugation(diag({1.0, 2.0})), InvalidArgument);
}

TEST(BuildUnitaryConjugation, SpectrumMatchesPairEnumeration) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int n = 1; n <= 6; ++n) {
        for (const auto& mults : oracle::all_compositions(n)) {
            if (rng() % 4 != 0 && n > 3) continue;  // sample the larger sets
            SpectrumModel model;
            model.mults = mults;
            for (std::size_t i = 0; i < mults.size(); ++i) model.alphas.push_back(std::polar(1.0, phase(rng)));
            const auto l = build_unitary_conjugation(realize(model, rng()));
            const auto expected = oracle::enumerate_pairs(
                model.alphas, model.mults, [](Complex ai, Complex aj) { return aj / ai + ai / aj - 2.0; }, 1e-9);
            const auto s = eig_clustered(l);
            for (const auto& vc : expected) {
                EXPECT_EQ(multiplicity_near(s, vc.value, 1e-8), vc.count) << "n=" << n;
            }
        }
    }
}

// --- power model ------------------------------------------------------------

TEST(BuildPowerModel, ZeroRatesGiveZero) {
    std::mt19937_64 rng(51);
    const std::vector<double> rates(3, 0.0);
    EXPECT_LT(max_abs(build_power_model(random_herm(3, rng), rates)), 1e-15);
}

TEST(BuildPowerModel, EvenPowersOfInvolutionVanish) {
    const std::vector<double> rates{0.0, 1.0};
    EXPECT_LT(max_abs(build_power_model(diag({1.0, -1.0}), rates)), 1e-15);
}

TEST(BuildPowerModel, SymmetricSpectrumZeroMultiplicity) {
    const std::vector<double> rates{0.0, 1.0, 0.0};
    const auto s = eig_clustered(build_power_model(diag({1.0, 0.0, -1.0}), rates));
    EXPECT_EQ(multiplicity_near(s, 0.0), 5);
    EXPECT_EQ(multiplicity_near(s, -1.0), 4);
}

TEST(BuildPowerModel, MatchesNestedCommutatorsForComplexHermitian) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 6; ++trial) {
        const Index n = 2 + trial % 3;
        const auto f = random_herm(n, rng);
        std::vector<double> rates(static_cast<std::size_t>(n));
        for (auto& g : rates) g = 0.1 + 0.1 * static_cast<double>(rng() % 9);
        const auto reference = oracle::superoperator_from_map(n, [&](const ComplexMatrix& rho) {
            ComplexMatrix out = ComplexMatrix::Zero(n, n);
            ComplexMatrix fk = identity(n);
            for (const double g : rates) {
                fk = fk * f;
                out -= g * commutator(fk, commutator(fk, rho));
            }
            return out;
        });
        EXPECT_LT(max_abs(build_power_model(f, rates) - reference), 1e-9 * std::max(1.0, max_abs(reference)));
    }
}

TEST(BuildPowerModel, TransposeFreeLayoutSharesSpectrum) {
    std::mt19937_64 rng(57);
    const auto f = random_herm(3, rng);
    const std::vector<double> rates{0.4, 0.7, 0.2};
    const auto a = eig_clustered(build_power_model(f, rates, PowerLayout::Vectorized));
    const auto b = eig_clustered(build_power_model(f, rates, PowerLayout::TransposeFree));
    ASSERT_EQ(a.clusters.size(), b.clusters.size());
    for (std::size_t i = 0; i < a.clusters.size(); ++i) {
        EXPECT_NEAR(a.clusters[i].value.real(), b.clusters[i].value.real(), 1e-10);
        EXPECT_EQ(a.clusters[i].algebraic, b.clusters[i].algebraic);
    }
    // For real symmetric F both layouts are the same matrix.
    const ComplexMatrix real_f = f.real().cast<Complex>();
    const ComplexMatrix sym = 0.5 * (real_f + real_f.transpose());
    EXPECT_LT(max_abs(build_power_model(sym, rates, PowerLayout::Vectorized) -
                      build_power_model(sym, rates, PowerLayout::TransposeFree)),
              1e-12);
}

TEST(BuildPowerModel, TransposeFreeLayoutLosesTraceForComplexF) {
    std::mt19937_64 rng(58);
    const auto f = random_herm(3, rng);
    const std::vector<double> rates{1.0, 0.0, 0.0};
    const auto rho = random_density_matrix(3, 4);
    const auto l = build_power_model(f, rates, PowerLayout::TransposeFree);
    EXPECT_GT(std::abs(devectorize(l * vectorize(rho), 3).trace()), 1e-6);
}

TEST(BuildPowerModel, SpectrumMatchesPairEnumeration) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> value(-1.5, 1.5);
    std::uniform_real_distribution<double> rate(0.1, 1.0);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 6; ++trial) {
            SpectrumModel model;
            model.mults = oracle::all_compositions(n)[rng() % (1u << (n - 1))];
            for (std::size_t i = 0; i < model.mults.size(); ++i) model.alphas.emplace_back(value(rng), 0.0);
            std::vector<double> rates(static_cast<std::size_t>(n));
            for (auto& g : rates) g = rng() % 2 ? rate(rng) : 0.0;
            rates[0] = rate(rng);
            const auto l = build_power_model(realize(model, rng()), rates);
            const auto expected = oracle::enumerate_pairs(
                model.alphas, model.mults,
                [&](Complex ai, Complex aj) {
                    double v = 0.0;
                    for (std::size_t k = 0; k < rates.size(); ++k) {
                        const double d = std::pow(ai.real(), k + 1.0) - std::pow(aj.real(), k + 1.0);
                        v -= rates[k] * d * d;
                    }
                    return Complex{v, 0.0};
                },
                1e-9);
            const auto s = eig_clustered(l);
            for (const auto& vc : expected) {
                EXPECT_EQ(multiplicity_near(s, vc.value, 1e-7), vc.count);
            }
            EXPECT_LE(hermitian_residual(l), 1e-10);
            // Negative semidefinite.
            for (const auto& c : s.clusters) EXPECT_LE(c.value.real(), 1e-10);
        }
    }
}

TEST(BuildPowerModel, EvenRateWithSymmetricSpectrumExceedsSumOfSquares) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const int n1 = 1 + static_cast<int>(rng() % 2);
        const int n3 = 1 + static_cast<int>(rng() % 2);
        const auto model = arithmetic_model(Parity::Odd, 1, 0.8, {n1, 1, n3});
        std::vector<double> rates(static_cast<std::size_t>(model.dimension()), 0.0);
        rates[1] = 0.6;
        const auto s = eig_clustered(build_power_model(realize_hermitian(model, rng()), rates));
        EXPECT_GT(multiplicity_near(s, 0.0), sum_of_squares(model.mults));
    }
}

TEST(BuildPowerModel, RejectsInvalidInput) {
    ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
    not_hermitian(0, 1) = 1.0;
    const std::vector<double> two{1.0, 0.0};
    const std::vector<double> three{1.0, 0.0, 0.0};
    const std::vector<double> negative{1.0, -1.0};
    EXPECT_THROW((void)build_power_model(not_hermitian, two), InvalidArgument);
    EXPECT_THROW((void)build_power_model(identity(2), three), InvalidArgument);
    EXPECT_THROW((void)build_power_model(identity(2), negative), InvalidArgument);
}

// --- Gaussian and von Neumann -----------------------------------------------

TEST(BuildGaussian, Examples) {
    EXPECT_LT(max_abs(build_gaussian(identity(2))), 1e-15);
    const auto s2 = eig_clustered(build_gaussian(diag({1.0, -1.0})));
    EXPECT_EQ(multiplicity_near(s2, 0.0), 2);
    EXPECT_EQ(multiplicity_near(s2, -2.0), 2);
    // -1/2 (h_i - h_j)^2 vanishes only on the three equal pairs.
    const auto s3 = eig_clustered(build_gaussian(diag({1.0, 0.0, -1.0})));
    EXPECT_EQ(multiplicity_near(s3, 0.0), 3);
    EXPECT_EQ(multiplicity_near(s3, -0.5), 4);
    EXPECT_EQ(multiplicity_near(s3, -2.0), 2);
}

TEST(BuildGaussian, MatchesDoubleCommutator) {
    std::mt19937_64 rng(67);
    const auto h = random_herm(3, rng);
    const auto reference = oracle::superoperator_from_map(
        3, [&](const ComplexMatrix& rho) { return ComplexMatrix(-0.5 * commutator(h, commutator(h, rho))); });
    EXPECT_LT(max_abs(build_gaussian(h) - reference), 1e-12);
}

TEST(BuildVonNeumann, Examples) {
    EXPECT_LT(max_abs(build_von_neumann(identity(2))), 1e-15);
    const auto s2 = eig_clustered(build_von_neumann(diag({1.0, -1.0})));
    EXPECT_EQ(multiplicity_near(s2, 0.0), 2);
    EXPECT_EQ(multiplicity_near(s2, Complex{0.0, -2.0}), 1);
    EXPECT_EQ(multiplicity_near(s2, Complex{0.0, 2.0}), 1);
    const auto s3 = eig_clustered(build_von_neumann(diag({2.0, 1.0, 0.0})));
    EXPECT_EQ(multiplicity_near(s3, 0.0), 3);
    EXPECT_EQ(multiplicity_near(s3, Complex{0.0, 1.0}), 2);
    EXPECT_EQ(multiplicity_near(s3, Complex{0.0, -1.0}), 2);
    EXPECT_EQ(multiplicity_near(s3, Complex{0.0, 2.0}), 1);
    EXPECT_EQ(multiplicity_near(s3, Complex{0.0, -2.0}), 1);
}

TEST(BuildVonNeumann, MatchesCommutator) {
    std::mt19937_64 rng(71);
    const auto h = random_herm(4, rng);
    const auto reference = oracle::superoperator_from_map(
        4, [&](const ComplexMatrix& rho) { return ComplexMatrix(Complex{0.0, -1.0} * commutator(h, rho)); });
    EXPECT_LT(max_abs(build_von_neumann(h) - reference), 1e-12);
}

TEST(HermitianOperatorChecks, GaussianAndVonNeumannRejectNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    EXPECT_THROW((void)build_gaussian(m), InvalidArgument);
    EXPECT_THROW((void)build_von_neumann(m), InvalidArgument);
}

// --- invariants across builders ---------------------------------------------

TEST(AllBuilders, AnnihilateTrace) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 5; ++trial) {
        const Index n = 2 + trial % 3;
        const auto h = random_herm(n, rng);
        const auto f = random_herm(n, rng);
        std::vector<double> rates(static_cast<std::size_t>(n), 0.5);
        const std::vector<LindbladTerm> terms{{random_matrix(n, rng), 0.7}, {random_matrix(n, rng), 0.3}};
        const std::vector<ComplexMatrix> generators{
            build_gksl(h, terms), build_unitary_conjugation(random_unitary(n, rng())), build_power_model(f, rates),
            build_gaussian(h), build_von_neumann(h)};
        for (const auto& l : generators) {
            for (int k = 0; k < 3; ++k) {
                const ComplexMatrix rho = random_herm(n, rng);
                EXPECT_LT(std::abs(devectorize(l * vectorize(rho), n).trace()), 1e-10);
            }
        }
    }
}

TEST(BuildFromSpec, DispatchesOnModel) {
    GeneratorSpec spec;
    spec.model = ModelKind::VonNeumann;
    spec.hamiltonian = diag({1.0, -1.0});
    EXPECT_TRUE(build(spec).isApprox(build_von_neumann(*spec.hamiltonian)));
    spec.model = ModelKind::Gaussian;
    EXPECT_TRUE(build(spec).isApprox(build_gaussian(*spec.hamiltonian)));
    spec.model = ModelKind::PowerModel;
    EXPECT_THROW((void)build(spec), InvalidArgument);  // no F
    spec.base_operator = diag({1.0, 0.0});
    spec.rates = {1.0, 0.0};
    EXPECT_TRUE(build(spec).isApprox(build_power_model(*spec.base_operator, spec.rates)));
    spec.model = ModelKind::Gksl;
    spec.lindblad = {{diag({1.0, -1.0}), 1.0}};
    EXPECT_TRUE(build(spec).isApprox(build_gksl(*spec.hamiltonian, spec.lindblad)));
    EXPECT_EQ(model_kind_from_string("UnitaryConjugation"), ModelKind::UnitaryConjugation);
    EXPECT_THROW((void)model_kind_from_string("Lindblad"), InvalidArgument);
}

// --- spectrum models ----------------------------------------------------------

TEST(RealizeUnitary, TrivialBasis) {
    const auto f = realize_unitary(geometric_model(std::numbers::pi / 2, {1, 1}), std::nullopt);
    EXPECT_TRUE(f.isApprox(diag({1.0, Complex{0.0, 1.0}}), 1e-14));
}

TEST(RealizeUnitary, RoundTripThroughEigClustered) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto f = realize_unitary(geometric_model(0.7, {2, 1}), seed);
        EXPECT_TRUE(is_unitary(f));
        const auto s = eig_clustered(f);
        ASSERT_EQ(s.clusters.size(), 2u);
        EXPECT_EQ(multiplicity_near(s, 1.0), 2);
        EXPECT_EQ(multiplicity_near(s, std::polar(1.0, 0.7)), 1);
    }
}

TEST(RealizeUnitary, RejectsBadRatios) {
    EXPECT_THROW((void)geometric_model(2.0, {1, 1, 1}), InvalidArgument);   // > pi/2
    EXPECT_THROW((void)geometric_model(-0.3, {1, 1}), InvalidArgument);
    EXPECT_NO_THROW((void)geometric_model(std::numbers::pi / 2, {1, 1, 1}));  // closed end
    const auto collide = geometric_model(2.0, {1, 1, 1}, /*allow_collisions=*/true);
    EXPECT_THROW((void)realize_unitary(collide, 1), InvalidArgument);
    EXPECT_NO_THROW((void)realize_unitary(collide, 1, true));

    SpectrumModel off_circle;
    off_circle.alphas = {Complex{1.0, 0.0}, Complex{2.0, 0.0}};
    off_circle.mults = {1, 1};
    off_circle.structure = GeometricRatio{Complex{2.0, 0.0}};
    EXPECT_THROW((void)realize_unitary(off_circle, 1), InvalidArgument);
}

TEST(RealizeHermitian, ArithmeticSpectra) {
    const auto odd = arithmetic_model(Parity::Odd, 1, 1.0, {1, 1, 1});
    ASSERT_EQ(odd.alphas.size(), 3u);
    EXPECT_EQ(odd.alphas[0].real(), 1.0);
    EXPECT_EQ(odd.alphas[1].real(), 0.0);
    EXPECT_EQ(odd.alphas[2].real(), -1.0);

    const auto even = arithmetic_model(Parity::Even, 1, 1.0, {1, 1});
    EXPECT_EQ(even.alphas[0].real(), 1.0);
    EXPECT_EQ(even.alphas[1].real(), -1.0);

    const auto wide = arithmetic_model(Parity::Odd, 2, 0.5, {1, 1, 1, 1, 1});
    const double expected[] = {1.0, 0.5, 0.0, -0.5, -1.0};
    for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(wide.alphas[i].real(), expected[i]);

    const auto even4 = arithmetic_model(Parity::Even, 2, 1.0, {1, 1, 1, 1});
    const double expected4[] = {2.0, 1.0, -1.0, -2.0};
    for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(even4.alphas[i].real(), expected4[i]);

    const auto f = realize_hermitian(arithmetic_model(Parity::Odd, 2, 0.5, {2, 1, 1, 1, 2}), 9);
    EXPECT_LE(hermitian_residual(f), 1e-15);
    const auto s = eig_clustered(f);
    EXPECT_EQ(multiplicity_near(s, 1.0), 2);
    EXPECT_EQ(multiplicity_near(s, 0.0), 1);
    EXPECT_EQ(multiplicity_near(s, -1.0), 2);
}

TEST(RealizeHermitian, RejectsInconsistentParity) {
    EXPECT_THROW((void)arithmetic_model(Parity::Odd, 1, 1.0, {1, 1}), InvalidArgument);
    EXPECT_THROW((void)arithmetic_model(Parity::Even, 2, 1.0, {1, 1, 1}), InvalidArgument);
    EXPECT_THROW((void)arithmetic_model(Parity::Odd, 1, 0.0, {1, 1, 1}), InvalidArgument);
    EXPECT_THROW((void)realize_hermitian(geometric_model(0.5, {1, 1}), 1), InvalidArgument);
}

TEST(SpectrumModel, ValidateCatchesMismatches) {
    SpectrumModel m;
    m.alphas = {Complex{1.0, 0.0}, Complex{1.0, 0.0}};
    m.mults = {1, 1};
    EXPECT_THROW(m.validate(), InvalidArgument);  // not distinct
    m.alphas = {Complex{1.0, 0.0}};
    EXPECT_THROW(m.validate(), InvalidArgument);  // size mismatch
    m.mults = {0};
    EXPECT_THROW(m.validate(), InvalidArgument);
}

TEST(InferSpectrumModel, RecoversGeometricOrder) {
    const auto model = geometric_model(0.6, {2, 1, 3});
    const auto inferred = infer_spectrum_model(realize_unitary(model, 17));
    ASSERT_TRUE(std::holds_alternative<GeometricRatio>(inferred.structure));
    // The sequence may be read in either direction; the multiplicities must
    // follow it.
    const bool forward = inferred.mults == std::vector<int>{2, 1, 3};
    const bool backward = inferred.mults == std::vector<int>{3, 1, 2};
    EXPECT_TRUE(forward || backward);
    EXPECT_NEAR(std::abs(ratio_angle(std::get<GeometricRatio>(inferred.structure))), 0.6, 1e-9);
}

TEST(InferSpectrumModel, RecoversArithmeticStructure) {
    const auto model = arithmetic_model(Parity::Even, 2, 0.4, {1, 2, 2, 1});
    const auto inferred = infer_spectrum_model(realize_hermitian(model, 5));
    const auto* step = std::get_if<ArithmeticStep>(&inferred.structure);
    ASSERT_NE(step, nullptr);
    EXPECT_EQ(step->u, 2);
    EXPECT_EQ(step->parity, Parity::Even);
    EXPECT_NEAR(step->c, 0.4, 1e-9);
    EXPECT_EQ(inferred.mults, (std::vector<int>{1, 2, 2, 1}));

    SpectrumModel generic;
    generic.alphas = {Complex{0.9, 0.0}, Complex{0.1, 0.0}, Complex{-0.4, 0.0}};
    generic.mults = {1, 1, 1};
    EXPECT_TRUE(std::holds_alternative<GenericStructure>(infer_spectrum_model(realize(generic, 3)).structure));
}
