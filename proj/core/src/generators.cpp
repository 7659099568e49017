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

#include "qtomo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qtomo {

namespace {

constexpr double kModelTol = 1e-10;

void require_hermitian(const ComplexMatrix& m, const char* what) {
    if (!is_hermitian(m)) {
        throw InvalidArgument(std::string(what) + ": operator must be Hermitian");
    }
}

void require_rates(std::span<const double> rates, const char* what) {
    for (double g : rates) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw InvalidArgument(std::string(what) + ": rates must be finite and non-negative");
        }
    }
}

double max_theta(int r) { return r <= 1 ? std::numbers::pi : std::numbers::pi / static_cast<double>(r - 1); }

void check_theta(double theta, int r, bool allow_collisions) {
    if (allow_collisions || r <= 1) {
        return;
    }
    const double hi = max_theta(r);
    if (!(theta > 0.0) || theta > hi * (1.0 + 1e-12)) {
        throw InvalidArgument("geometric ratio angle " + std::to_string(theta) + " outside (0, pi/(r-1)] = (0, " +
                              std::to_string(hi) + "]");
    }
}

ComplexMatrix diagonal_of(const SpectrumModel& model) {
    const int n = model.dimension();
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    Index pos = 0;
    for (std::size_t i = 0; i < model.alphas.size(); ++i) {
        for (int k = 0; k < model.mults[i]; ++k) {
            d(pos, pos) = model.alphas[i];
            ++pos;
        }
    }
    return d;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Gksl: return "GKSL";
        case ModelKind::UnitaryConjugation: return "UnitaryConjugation";
        case ModelKind::PowerModel: return "PowerModel";
        case ModelKind::Gaussian: return "Gaussian";
        case ModelKind::VonNeumann: return "VonNeumann";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    for (auto kind : {ModelKind::Gksl, ModelKind::UnitaryConjugation, ModelKind::PowerModel, ModelKind::Gaussian,
                      ModelKind::VonNeumann}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InvalidArgument("unknown generator model '" + name + "'");
}

Index GeneratorSpec::dimension() const {
    if (hamiltonian) return hamiltonian->rows();
    if (base_operator) return base_operator->rows();
    if (!lindblad.empty()) return lindblad.front().op.rows();
    return 0;
}

ComplexMatrix build(const GeneratorSpec& spec) {
    auto need = [&](const std::optional<ComplexMatrix>& m, const char* field) -> const ComplexMatrix& {
        if (!m) {
            throw InvalidArgument(to_string(spec.model) + " generator requires '" + field + "'");
        }
        return *m;
    };
    switch (spec.model) {
        case ModelKind::Gksl: {
            if (spec.hamiltonian) {
                return build_gksl(*spec.hamiltonian, spec.lindblad);
            }
            if (spec.lindblad.empty()) {
                throw InvalidArgument("GKSL generator requires 'H' or at least one Lindblad operator");
            }
            const Index n = spec.lindblad.front().op.rows();
            return build_gksl(ComplexMatrix::Zero(n, n), spec.lindblad);
        }
        case ModelKind::UnitaryConjugation: return build_unitary_conjugation(need(spec.base_operator, "F"));
        case ModelKind::PowerModel: return build_power_model(need(spec.base_operator, "F"), spec.rates);
        case ModelKind::Gaussian: return build_gaussian(need(spec.hamiltonian, "H"));
        case ModelKind::VonNeumann: return build_von_neumann(need(spec.hamiltonian, "H"));
    }
    throw InvalidArgument("unhandled generator model");
}

ComplexMatrix build_gksl(const ComplexMatrix& hamiltonian, std::span<const LindbladTerm> terms) {
    require_hermitian(hamiltonian, "build_gksl");
    const Index n = hamiltonian.rows();
    const ComplexMatrix id = identity(n);
    const Complex i_unit{0.0, 1.0};

    ComplexMatrix out = -i_unit * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
    for (const auto& term : terms) {
        if (term.op.rows() != n || term.op.cols() != n) {
            throw InvalidArgument("build_gksl: Lindblad operator dimension does not match H");
        }
        if (!(term.rate >= 0.0) || !std::isfinite(term.rate)) {
            throw InvalidArgument("build_gksl: rates must be finite and non-negative");
        }
        const ComplexMatrix& v = term.op;
        const ComplexMatrix vdv = v.adjoint() * v;
        // gamma (V rho V^* - 1/2 {V^* V, rho})
        out += term.rate * (kron(v.conjugate(), v) - 0.5 * kron(id, vdv) - 0.5 * kron(vdv.transpose(), id));
    }
    return out;
}

ComplexMatrix build_unitary_conjugation(const ComplexMatrix& f) {
    if (!is_unitary(f)) {
        throw InvalidArgument("build_unitary_conjugation: F must be unitary");
    }
    const Index n = f.rows();
    const ComplexMatrix f_inv = f.inverse();
    return kron(f_inv.transpose(), f) + kron(f.transpose(), f_inv) - 2.0 * identity(n * n);
}

ComplexMatrix build_power_model(const ComplexMatrix& f, std::span<const double> rates, PowerLayout layout) {
    require_hermitian(f, "build_power_model");
    require_rates(rates, "build_power_model");
    const Index n = f.rows();
    if (static_cast<Index>(rates.size()) != n) {
        throw InvalidArgument("build_power_model: expected " + std::to_string(n) + " rates, got " +
                              std::to_string(rates.size()));
    }
    const ComplexMatrix id = identity(n);
    ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
    ComplexMatrix fk = id;
    for (std::size_t k = 0; k < rates.size(); ++k) {
        fk = fk * f;
        if (rates[k] == 0.0) {
            continue;
        }
        const ComplexMatrix f2k = fk * fk;
        ComplexMatrix term;
        if (layout == PowerLayout::Vectorized) {
            term = kron(id, f2k) - 2.0 * kron(fk.transpose(), fk) + kron(f2k.transpose(), id);
        } else {
            term = kron(f2k, id) - 2.0 * kron(fk, fk) + kron(id, f2k);
        }
        out -= rates[k] * term;
    }
    return out;
}

ComplexMatrix build_gaussian(const ComplexMatrix& hamiltonian) {
    require_hermitian(hamiltonian, "build_gaussian");
    const Index n = hamiltonian.rows();
    const ComplexMatrix id = identity(n);
    const ComplexMatrix h2 = hamiltonian * hamiltonian;
    return -0.5 * (kron(id, h2) - 2.0 * kron(hamiltonian.transpose(), hamiltonian) + kron(h2.transpose(), id));
}

ComplexMatrix build_von_neumann(const ComplexMatrix& hamiltonian) {
    require_hermitian(hamiltonian, "build_von_neumann");
    const Index n = hamiltonian.rows();
    const ComplexMatrix id = identity(n);
    return Complex{0.0, -1.0} * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
}

// ---------------------------------------------------------------------------

int SpectrumModel::dimension() const {
    int n = 0;
    for (int m : mults) n += m;
    return n;
}

std::vector<double> arithmetic_values(const ArithmeticStep& step) {
    std::vector<double> values;
    const double u = step.u;
    if (step.parity == Parity::Odd) {
        for (int i = 1; i <= 2 * step.u + 1; ++i) {
            values.push_back(u * step.c - (i - 1) * step.c);
        }
    } else {
        for (int i = 1; i <= 2 * step.u; ++i) {
            values.push_back(i <= step.u ? u * step.c + (1 - i) * step.c : u * step.c - i * step.c);
        }
    }
    return values;
}

void SpectrumModel::validate() const {
    const int r = distinct();
    if (r == 0) {
        throw InvalidArgument("spectrum model needs at least one eigenvalue");
    }
    if (mults.size() != alphas.size()) {
        throw InvalidArgument("spectrum model: " + std::to_string(alphas.size()) + " eigenvalues but " +
                              std::to_string(mults.size()) + " multiplicities");
    }
    for (int m : mults) {
        if (m < 1) throw InvalidArgument("spectrum model: multiplicities must be positive");
    }
    double scale = 0.0;
    for (const auto& a : alphas) scale = std::max(scale, std::abs(a));
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            if (std::abs(alphas[i] - alphas[j]) <= kModelTol * std::max(1.0, scale)) {
                throw InvalidArgument("spectrum model: eigenvalues must be distinct");
            }
        }
    }

    if (const auto* g = std::get_if<GeometricRatio>(&structure)) {
        for (int i = 0; i + 1 < r; ++i) {
            if (alphas[i] == Complex{0.0, 0.0} ||
                std::abs(alphas[i + 1] / alphas[i] - g->q) > kModelTol * std::max(1.0, std::abs(g->q))) {
                throw InvalidArgument("spectrum model: consecutive eigenvalue ratio differs from q");
            }
        }
    } else if (const auto* a = std::get_if<ArithmeticStep>(&structure)) {
        if (a->u < 1) throw InvalidArgument("arithmetic spectrum: u must be a positive integer");
        if (a->c == 0.0 || !std::isfinite(a->c)) throw InvalidArgument("arithmetic spectrum: step c must be nonzero");
        const int expected_r = a->parity == Parity::Odd ? 2 * a->u + 1 : 2 * a->u;
        if (r != expected_r) {
            throw InvalidArgument("arithmetic spectrum: r = " + std::to_string(r) + " inconsistent with u = " +
                                  std::to_string(a->u) + " and " + (a->parity == Parity::Odd ? "odd" : "even") +
                                  " parity");
        }
        const auto values = arithmetic_values(*a);
        for (int i = 0; i < r; ++i) {
            if (std::abs(alphas[i] - Complex{values[i], 0.0}) > kModelTol * std::abs(a->c) * a->u) {
                throw InvalidArgument("arithmetic spectrum: eigenvalue " + std::to_string(i + 1) +
                                      " does not follow the arithmetic sequence");
            }
        }
    }
}

SpectrumModel geometric_model(double theta, std::vector<int> mults, bool allow_collisions) {
    const int r = static_cast<int>(mults.size());
    check_theta(theta, r, allow_collisions);
    SpectrumModel model;
    for (int i = 0; i < r; ++i) {
        model.alphas.push_back(std::polar(1.0, i * theta));
    }
    model.mults = std::move(mults);
    model.structure = GeometricRatio{std::polar(1.0, theta)};
    model.validate();
    return model;
}

SpectrumModel arithmetic_model(Parity parity, int u, double c, std::vector<int> mults) {
    ArithmeticStep step{c, u, parity};
    const int expected_r = parity == Parity::Odd ? 2 * u + 1 : 2 * u;
    if (u < 1 || static_cast<int>(mults.size()) != expected_r) {
        throw InvalidArgument("arithmetic_model: " + std::to_string(mults.size()) +
                              " multiplicities inconsistent with u = " + std::to_string(u) + " and " +
                              (parity == Parity::Odd ? "odd" : "even") + " parity");
    }
    SpectrumModel model;
    for (double v : arithmetic_values(step)) model.alphas.emplace_back(v, 0.0);
    model.mults = std::move(mults);
    model.structure = step;
    model.validate();
    return model;
}

double ratio_angle(const GeometricRatio& g) { return std::arg(g.q); }

ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            z(i, j) = Complex{normal(rng), normal(rng)};
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) {
            q.col(j) *= d / std::abs(d);
        }
    }
    return q;
}

ComplexMatrix realize(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed) {
    model.validate();
    const ComplexMatrix d = diagonal_of(model);
    if (!basis_seed) {
        return d;
    }
    const ComplexMatrix u = random_unitary(d.rows(), *basis_seed);
    return u * d * u.adjoint();
}

ComplexMatrix realize_unitary(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed,
                              bool allow_collisions) {
    const auto* g = std::get_if<GeometricRatio>(&model.structure);
    if (g == nullptr) {
        throw InvalidArgument("realize_unitary: spectrum model must carry a geometric ratio");
    }
    if (std::abs(std::abs(g->q) - 1.0) > kModelTol) {
        throw InvalidArgument("realize_unitary: |q| must be 1 for a unitary operator");
    }
    for (const auto& a : model.alphas) {
        if (std::abs(std::abs(a) - 1.0) > kModelTol) {
            throw InvalidArgument("realize_unitary: eigenvalues must lie on the unit circle");
        }
    }
    check_theta(ratio_angle(*g), model.distinct(), allow_collisions);
    ComplexMatrix f = realize(model, basis_seed);
    return f;
}

ComplexMatrix realize_hermitian(const SpectrumModel& model, std::optional<std::uint64_t> basis_seed) {
    if (!std::holds_alternative<ArithmeticStep>(model.structure)) {
        throw InvalidArgument("realize_hermitian: spectrum model must carry an arithmetic step");
    }
    ComplexMatrix f = realize(model, basis_seed);
    // Symmetrize away the round-off of U D U^*.
    return 0.5 * (f + f.adjoint());
}

SpectrumModel infer_spectrum_model(const ComplexMatrix& op) {
    const Spectrum spectrum = eig_clustered(op);
    SpectrumModel model;
    for (const auto& c : spectrum.clusters) {
        model.alphas.push_back(c.value);
        model.mults.push_back(c.geometric);
    }
    const int r = model.distinct();
    double scale = 0.0;
    for (const auto& a : model.alphas) scale = std::max(scale, std::abs(a));
    const double tol = 1e-8 * std::max(1.0, scale);

    const bool on_circle =
        std::all_of(model.alphas.begin(), model.alphas.end(), [&](Complex a) { return std::abs(std::abs(a) - 1.0) <= tol; });
    if (on_circle && r >= 2) {
        std::vector<std::size_t> order(static_cast<std::size_t>(r));
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return std::arg(model.alphas[a]) < std::arg(model.alphas[b]); });
        // The sequence starts right after the widest angular gap.
        std::size_t start = 0;
        double widest = -1.0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const double from = std::arg(model.alphas[order[k]]);
            const double to = std::arg(model.alphas[order[(k + 1) % order.size()]]);
            double gap = to - from;
            if (gap <= 0.0) gap += 2.0 * std::numbers::pi;
            if (gap > widest) {
                widest = gap;
                start = (k + 1) % order.size();
            }
        }
        SpectrumModel seq;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto idx = order[(start + k) % order.size()];
            seq.alphas.push_back(model.alphas[idx]);
            seq.mults.push_back(model.mults[idx]);
        }
        const Complex q = seq.alphas[1] / seq.alphas[0];
        bool geometric = true;
        for (int i = 0; i + 1 < r; ++i) {
            if (std::abs(seq.alphas[i + 1] / seq.alphas[i] - q) > tol) geometric = false;
        }
        if (geometric) {
            seq.structure = GeometricRatio{q};
            return seq;
        }
        return model;
    }

    const bool real =
        std::all_of(model.alphas.begin(), model.alphas.end(), [&](Complex a) { return std::abs(a.imag()) <= tol; });
    if (real && r >= 2) {
        std::vector<std::size_t> order(static_cast<std::size_t>(r));
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return model.alphas[a].real() > model.alphas[b].real(); });
        ArithmeticStep step;
        step.parity = r % 2 == 1 ? Parity::Odd : Parity::Even;
        step.u = r / 2;
        step.c = model.alphas[order[0]].real() / step.u;
        const auto expected = arithmetic_values(step);
        bool arithmetic = step.c > 0.0;
        for (int i = 0; i < r && arithmetic; ++i) {
            if (std::abs(model.alphas[order[i]].real() - expected[i]) > tol) arithmetic = false;
        }
        if (arithmetic) {
            SpectrumModel seq;
            for (int i = 0; i < r; ++i) {
                seq.alphas.emplace_back(expected[i], 0.0);
                seq.mults.push_back(model.mults[order[i]]);
            }
            seq.structure = step;
            return seq;
        }
        // Generic real spectra keep descending order.
        SpectrumModel seq;
        for (auto idx : order) {
            seq.alphas.emplace_back(model.alphas[idx].real(), 0.0);
            seq.mults.push_back(model.mults[idx]);
        }
        return seq;
    }
    return model;
}

}  // namespace qtomo
