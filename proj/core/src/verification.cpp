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

#include "qtomo/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qtomo {

namespace {

std::vector<int> random_composition(int total, int parts, std::mt19937_64& rng) {
    const auto all = compositions(total, parts);
    if (all.empty()) {
        throw InvalidArgument("no composition of " + std::to_string(total) + " into " + std::to_string(parts) +
                              " parts");
    }
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

std::vector<int> random_composition(int total, std::mt19937_64& rng) {
    const auto all = compositions(total);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

int total_of(const std::vector<int>& mults) {
    int n = 0;
    for (int m : mults) n += m;
    return n;
}

std::vector<double> even_rates(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rate(0.1, 1.0);
    std::bernoulli_distribution coin(0.5);
    std::vector<double> rates(static_cast<std::size_t>(dim), 0.0);
    for (int k = 2; k <= dim; k += 2) {
        rates[k - 1] = (k == 2 || coin(rng)) ? rate(rng) : 0.0;
    }
    return rates;
}

}  // namespace

std::string to_string(TheoremCase c) {
    switch (c) {
        case TheoremCase::Theorem2: return "theorem2";
        case TheoremCase::Theorem3Case1: return "theorem3-case1";
        case TheoremCase::Theorem3Case2: return "theorem3-case2";
        case TheoremCase::Theorem3Case3: return "theorem3-case3";
    }
    return "unknown";
}

TheoremCase theorem_case_from_string(const std::string& name) {
    for (auto c : {TheoremCase::Theorem2, TheoremCase::Theorem3Case1, TheoremCase::Theorem3Case2,
                   TheoremCase::Theorem3Case3}) {
        if (to_string(c) == name) return c;
    }
    throw InvalidArgument("unknown theorem case '" + name + "'");
}

TrialInstance sample_trial(TheoremCase theorem, int dim, std::uint64_t seed, const SamplingOptions& options) {
    std::mt19937_64 rng(seed);
    TrialInstance inst;
    inst.theorem = theorem;
    inst.seed = seed;
    inst.basis_seed = rng();
    if (options.mults) dim = total_of(*options.mults);
    if (dim < 1) throw InvalidArgument("sample_trial: dimension must be positive");

    switch (theorem) {
        case TheoremCase::Theorem2: {
            auto mults = options.mults.value_or(random_composition(dim, rng));
            const int r = static_cast<int>(mults.size());
            double theta = 0.7;
            if (options.theta) {
                theta = *options.theta;
            } else if (r >= 2) {
                std::uniform_real_distribution<double> frac(0.05, 0.95);
                theta = frac(rng) * std::numbers::pi / (r - 1);
            }
            // Range checking is left to realize_unitary so that forced angles
            // surface as a precondition failure.
            inst.model = geometric_model(theta, std::move(mults), /*allow_collisions=*/true);
            break;
        }
        case TheoremCase::Theorem3Case1: {
            auto mults = options.mults.value_or(random_composition(dim, rng));
            const int r = static_cast<int>(mults.size());
            std::uniform_real_distribution<double> magnitude(0.5, 1.5);
            std::bernoulli_distribution coin(0.5);
            std::vector<double> mags;
            while (static_cast<int>(mags.size()) < r) {
                const double m = magnitude(rng);
                const bool spaced =
                    std::all_of(mags.begin(), mags.end(), [&](double x) { return std::abs(x - m) >= 0.1; });
                if (spaced) mags.push_back(m);
            }
            for (double m : mags) inst.model.alphas.emplace_back(coin(rng) ? m : -m, 0.0);
            inst.model.mults = std::move(mults);
            inst.model.structure = GenericStructure{};

            std::uniform_real_distribution<double> rate(0.1, 1.0);
            inst.rates.assign(static_cast<std::size_t>(dim), 0.0);
            bool odd = false;
            for (int k = 1; k <= dim; ++k) {
                if (coin(rng)) {
                    inst.rates[k - 1] = rate(rng);
                    odd = odd || k % 2 == 1;
                }
            }
            if (!odd) {
                std::uniform_int_distribution<int> pick(0, (dim - 1) / 2);
                inst.rates[2 * pick(rng)] = rate(rng);
            }
            break;
        }
        case TheoremCase::Theorem3Case2:
        case TheoremCase::Theorem3Case3: {
            const bool odd_r = theorem == TheoremCase::Theorem3Case2;
            std::vector<int> mults;
            int u = 0;
            if (options.mults) {
                mults = *options.mults;
                const int r = static_cast<int>(mults.size());
                if ((r % 2 == 1) != odd_r) {
                    throw InvalidArgument("sample_trial: " + std::to_string(r) + " distinct eigenvalues do not fit " +
                                          to_string(theorem));
                }
                u = odd_r ? (r - 1) / 2 : r / 2;
            } else {
                const int max_u = odd_r ? (dim - 1) / 2 : dim / 2;
                if (max_u < 1) {
                    throw InvalidArgument("sample_trial: dimension " + std::to_string(dim) + " too small for " +
                                          to_string(theorem));
                }
                std::uniform_int_distribution<int> pick_u(1, max_u);
                u = pick_u(rng);
                mults = random_composition(dim, odd_r ? 2 * u + 1 : 2 * u, rng);
            }
            double c = 0.0;
            if (options.step) {
                c = *options.step;
            } else {
                std::uniform_real_distribution<double> step(0.5, 1.0);
                c = step(rng) / std::max(u, 1);
            }
            inst.model = arithmetic_model(odd_r ? Parity::Odd : Parity::Even, u, c, std::move(mults));
            inst.rates = even_rates(dim, rng);
            break;
        }
    }
    return inst;
}

TrialGenerator build_trial_generator(const TrialInstance& instance) {
    TrialGenerator out;
    if (instance.theorem == TheoremCase::Theorem2) {
        out.base_operator = realize_unitary(instance.model, instance.basis_seed);
        out.generator = build_unitary_conjugation(out.base_operator);
    } else {
        const ComplexMatrix f = realize(instance.model, instance.basis_seed);
        out.base_operator = 0.5 * (f + f.adjoint());
        out.generator = build_power_model(out.base_operator, instance.rates);
    }
    return out;
}

bool spectra_match(const Spectrum& numeric, const Spectrum& expected, double rel_tol, std::string* detail) {
    auto fail = [&](const std::string& why) {
        if (detail != nullptr) *detail = why;
        return false;
    };
    if (numeric.clusters.size() != expected.clusters.size()) {
        return fail("cluster count " + std::to_string(numeric.clusters.size()) + " (numeric) vs " +
                    std::to_string(expected.clusters.size()) + " (closed form)");
    }
    double scale = 1.0;
    for (const auto& c : expected.clusters) scale = std::max(scale, std::abs(c.value));
    std::vector<bool> used(numeric.clusters.size(), false);
    for (const auto& e : expected.clusters) {
        std::size_t best = numeric.clusters.size();
        double best_dist = rel_tol * scale;
        for (std::size_t i = 0; i < numeric.clusters.size(); ++i) {
            const double d = std::abs(numeric.clusters[i].value - e.value);
            if (!used[i] && d <= best_dist) {
                best = i;
                best_dist = d;
            }
        }
        std::ostringstream os;
        os << "closed-form eigenvalue " << e.value.real() << (e.value.imag() < 0 ? "" : "+") << e.value.imag() << "i";
        if (best == numeric.clusters.size()) {
            return fail(os.str() + " has no numeric counterpart");
        }
        if (numeric.clusters[best].algebraic != e.algebraic) {
            os << ": multiplicity " << numeric.clusters[best].algebraic << " (numeric) vs " << e.algebraic;
            return fail(os.str());
        }
        used[best] = true;
    }
    return true;
}

TrialOutcome run_trial(const TrialInstance& instance) {
    TrialOutcome out;
    const auto built = build_trial_generator(instance);
    const auto report = index_of_cyclicity(built.generator);
    out.numeric_eta = report.eta;
    out.hermitian_residual = hermitian_residual(built.generator);
    out.geometric_equals_algebraic = std::all_of(report.spectrum.clusters.begin(), report.spectrum.clusters.end(),
                                                 [](const EigenCluster& c) { return c.geometric == c.algebraic; });

    Evolution evolution = instance.theorem == TheoremCase::Theorem2
                              ? Evolution{UnitaryConjugationEvolution{}}
                              : Evolution{PowerModelEvolution{instance.rates}};
    if (instance.theorem == TheoremCase::Theorem2) {
        out.formula_eta = eta_theorem2(instance.model.mults);
        out.formula_method = EtaMethod::Theorem2;
    } else {
        const auto res = eta_theorem3(instance.model.mults, instance.rates, instance.model.structure);
        out.formula_eta = res.eta;
        out.formula_method = res.method;
    }
    const auto closed = closed_form_spectrum(instance.model, evolution);
    std::string why;
    out.spectrum_match = spectra_match(report.spectrum, closed.spectrum, 1e-8, &why);

    if (!out.eta_match()) {
        out.detail = "numeric eta " + std::to_string(out.numeric_eta) + " != closed-form eta " +
                     std::to_string(out.formula_eta) + " (" + to_string(out.formula_method) + ")";
    } else if (!out.spectrum_match) {
        out.detail = "spectrum mismatch: " + why;
    } else if (out.hermitian_residual > 1e-10) {
        out.detail = "generator symmetry residual " + std::to_string(out.hermitian_residual) + " > 1e-10";
    } else if (!out.geometric_equals_algebraic) {
        out.detail = "a cluster has geometric multiplicity below its algebraic multiplicity";
    }
    return out;
}

}  // namespace qtomo
