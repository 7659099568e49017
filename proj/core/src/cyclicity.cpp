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

#include "qtomo/cyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qtomo {

namespace {

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Pair key for closed-form bookkeeping; (-1, -1) is reserved for zero.
using PairKey = std::pair<int, int>;
constexpr PairKey kZeroKey{-1, -1};
constexpr double kClosedFormMergeTol = 1e-9;

struct Bucket {
    Complex value;
    int mult = 0;
};

// Structural buckets are merged again when their values coincide, which
// happens for special spectra (e.g. equally spaced alpha with odd rates).
Spectrum to_spectrum(const std::map<PairKey, Bucket>& buckets) {
    std::vector<Complex> values;
    std::vector<int> mults;
    double scale = 1.0;
    for (const auto& [key, b] : buckets) {
        values.push_back(b.value);
        mults.push_back(b.mult);
        scale = std::max(scale, std::abs(b.value));
    }
    Spectrum s;
    for (const auto& group : cluster_indices(values, kClosedFormMergeTol * scale)) {
        EigenCluster c;
        c.value = values[group.front()];
        for (auto idx : group) {
            if (values[idx] == Complex{0.0, 0.0}) c.value = values[idx];
            c.algebraic += mults[idx];
        }
        c.geometric = c.algebraic;
        s.clusters.push_back(c);
        s.dim += c.algebraic;
    }
    std::sort(s.clusters.begin(), s.clusters.end(),
              [](const EigenCluster& a, const EigenCluster& b) { return complex_less(a.value, b.value); });
    return s;
}

void add(std::map<PairKey, Bucket>& buckets, PairKey key, Complex value, int mult) {
    auto& b = buckets[key];
    if (b.mult == 0) b.value = value;
    b.mult += mult;
}

bool any_odd_rate(std::span<const double> rates) {
    for (std::size_t k = 0; k < rates.size(); k += 2) {
        if (rates[k] != 0.0) return true;
    }
    return false;
}

bool any_rate(std::span<const double> rates) {
    return std::any_of(rates.begin(), rates.end(), [](double g) { return g != 0.0; });
}

// Integer |alpha_i| / |c| for the arithmetic sequences.
int arithmetic_magnitude(const ArithmeticStep& step, int i /* 1-based */) {
    if (step.parity == Parity::Odd) {
        return std::abs(step.u + 1 - i);
    }
    return i <= step.u ? step.u + 1 - i : i - step.u;
}

ClosedFormSpectrum unitary_spectrum(const SpectrumModel& model) {
    for (const auto& a : model.alphas) {
        if (std::abs(std::abs(a) - 1.0) > 1e-10) {
            throw InvalidArgument("closed_form_spectrum: unitary conjugation needs eigenvalues on the unit circle");
        }
    }
    const int r = model.distinct();
    const bool geometric = std::holds_alternative<GeometricRatio>(model.structure);
    std::map<PairKey, Bucket> lambda;
    std::map<PairKey, Bucket> ratio;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const int mult = model.mults[i] * model.mults[j];
            const Complex ai = model.alphas[i];
            const Complex aj = model.alphas[j];
            const Complex value = aj / ai + ai / aj - 2.0;
            const Complex mu = ai / aj;
            if (i == j) {
                add(lambda, kZeroKey, Complex{0.0, 0.0}, mult);
                add(ratio, kZeroKey, Complex{1.0, 0.0}, mult);
            } else if (geometric) {
                add(lambda, {std::abs(i - j), 0}, value, mult);
                add(ratio, {i - j, 0}, mu, mult);
            } else {
                add(lambda, {std::min(i, j), std::max(i, j)}, value, mult);
                add(ratio, {i, j}, mu, mult);
            }
        }
    }
    ClosedFormSpectrum out{to_spectrum(lambda), to_spectrum(ratio)};
    // lambda_ij is real for unit-modulus alpha.
    for (auto& c : out.spectrum.clusters) c.value = Complex{c.value.real(), 0.0};
    return out;
}

ClosedFormSpectrum power_spectrum(const SpectrumModel& model, std::span<const double> rates) {
    for (const auto& a : model.alphas) {
        if (std::abs(a.imag()) > 1e-12 * std::max(1.0, std::abs(a))) {
            throw InvalidArgument("closed_form_spectrum: power model needs a real spectrum");
        }
    }
    const int r = model.distinct();
    const bool odd = any_odd_rate(rates);
    const bool nonzero = any_rate(rates);
    const auto* step = std::get_if<ArithmeticStep>(&model.structure);

    // Class id of |alpha_i|: integer magnitude for arithmetic spectra, exact
    // equality of |alpha| otherwise.
    std::vector<int> magnitude_class(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        if (step != nullptr) {
            magnitude_class[i] = arithmetic_magnitude(*step, i + 1);
        } else {
            magnitude_class[i] = i;
            for (int j = 0; j < i; ++j) {
                if (std::abs(model.alphas[j].real()) == std::abs(model.alphas[i].real())) {
                    magnitude_class[i] = magnitude_class[j];
                    break;
                }
            }
        }
    }

    std::map<PairKey, Bucket> lambda;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const int mult = model.mults[i] * model.mults[j];
            const double ai = model.alphas[i].real();
            const double aj = model.alphas[j].real();
            double value = 0.0;
            double pi = 1.0;
            double pj = 1.0;
            for (std::size_t k = 0; k < rates.size(); ++k) {
                pi *= ai;
                pj *= aj;
                value -= rates[k] * (pi - pj) * (pi - pj);
            }
            PairKey key;
            if (!nonzero || i == j) {
                key = kZeroKey;
            } else if (odd) {
                key = {std::min(i, j), std::max(i, j)};
            } else {
                const int a = magnitude_class[i];
                const int b = magnitude_class[j];
                key = a == b ? kZeroKey : PairKey{std::min(a, b), std::max(a, b)};
            }
            add(lambda, key, key == kZeroKey ? Complex{0.0, 0.0} : Complex{value, 0.0}, mult);
        }
    }
    return ClosedFormSpectrum{to_spectrum(lambda), Spectrum{}};
}

}  // namespace

std::string to_string(EtaMethod method) {
    switch (method) {
        case EtaMethod::Numeric: return "Numeric";
        case EtaMethod::Theorem2: return "Theorem2";
        case EtaMethod::Theorem3Case1: return "Theorem3Case1";
        case EtaMethod::Theorem3Case2: return "Theorem3Case2";
        case EtaMethod::Theorem3Case3: return "Theorem3Case3";
    }
    return "unknown";
}

EtaMethod eta_method_from_string(const std::string& name) {
    for (auto m : {EtaMethod::Numeric, EtaMethod::Theorem2, EtaMethod::Theorem3Case1, EtaMethod::Theorem3Case2,
                   EtaMethod::Theorem3Case3}) {
        if (to_string(m) == name) return m;
    }
    throw InvalidArgument("unknown eta method '" + name + "'");
}

CyclicityReport index_of_cyclicity(const ComplexMatrix& generator, const CyclicityOptions& options) {
    if (generator.rows() != generator.cols() || generator.rows() == 0) {
        throw InvalidArgument("index_of_cyclicity: generator must be square");
    }
    const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(generator.rows()))));
    if (n * n != generator.rows()) {
        throw InvalidArgument("index_of_cyclicity: generator dimension " + std::to_string(generator.rows()) +
                              " is not a perfect square");
    }

    CyclicityReport report;
    report.method = EtaMethod::Numeric;
    report.spectrum = eig_clustered(generator, options.tau_clust, options.tau_rank);
    for (const auto& c : report.spectrum.clusters) {
        report.eta = std::max(report.eta, c.geometric);
    }
    for (const auto& c : report.spectrum.clusters) {
        if (c.geometric == report.eta) report.attaining.push_back(c.value);
    }
    report.min_poly_degree = min_poly_degree(generator);

    std::vector<Complex> values;
    for (const auto& c : report.spectrum.clusters) values.push_back(c.value);
    const double tol = options.tau_clust.value_or(default_cluster_tolerance(values, generator));
    const auto& cl = report.spectrum.clusters;
    for (std::size_t i = 0; i < cl.size(); ++i) {
        for (std::size_t j = i + 1; j < cl.size(); ++j) {
            if (std::abs(cl[i].value - cl[j].value) <= 10.0 * tol) {
                report.warnings.push_back("clusters near " + std::to_string(cl[i].value.real()) + "+" +
                                          std::to_string(cl[i].value.imag()) +
                                          "i are within 10 tau_clust; multiplicities depend on the tolerance");
            }
        }
    }
    return report;
}

int delta_k(std::span<const int> mults, int k) {
    const int r = static_cast<int>(mults.size());
    if (k < 1 || k > r - 1) {
        throw InvalidArgument("delta_k: k = " + std::to_string(k) + " outside [1, r-1] for r = " + std::to_string(r));
    }
    int sum = 0;
    for (int i = 0; i + k < r; ++i) sum += mults[i] * mults[i + k];
    return 2 * sum;
}

int sum_of_squares(std::span<const int> mults) {
    int sum = 0;
    for (int n : mults) sum += n * n;
    return sum;
}

int diagonal_bound(int r) {
    if (r <= 2) return 0;
    return r % 2 == 1 ? (r - 1) / 2 : (r - 2) / 2;
}

int eta_theorem2(std::span<const int> mults) {
    if (mults.empty()) throw InvalidArgument("eta_theorem2: empty multiplicity list");
    for (int n : mults) {
        if (n < 1) throw InvalidArgument("eta_theorem2: multiplicities must be positive");
    }
    int eta = sum_of_squares(mults);
    const int p = diagonal_bound(static_cast<int>(mults.size()));
    for (int k = 1; k <= p; ++k) eta = std::max(eta, delta_k(mults, k));
    return eta;
}

Theorem3Result eta_theorem3(std::span<const int> mults, std::span<const double> rates,
                            const SpectrumStructure& structure) {
    if (mults.empty()) throw InvalidArgument("eta_theorem3: empty multiplicity list");
    int total = 0;
    for (int n : mults) {
        if (n < 1) throw InvalidArgument("eta_theorem3: multiplicities must be positive");
        total += n;
    }
    if (static_cast<int>(rates.size()) != total) {
        throw InvalidArgument("eta_theorem3: expected " + std::to_string(total) + " rates, got " +
                              std::to_string(rates.size()));
    }
    for (double g : rates) {
        if (!(g >= 0.0)) throw InvalidArgument("eta_theorem3: rates must be non-negative");
    }
    if (any_odd_rate(rates)) {
        return {sum_of_squares(mults), EtaMethod::Theorem3Case1};
    }
    if (!any_rate(rates)) {
        throw InvalidArgument("eta_theorem3: every rate is zero, so the generator vanishes and no case applies");
    }
    const auto* step = std::get_if<ArithmeticStep>(&structure);
    if (step == nullptr) {
        throw InvalidArgument("eta_theorem3: only even-indexed rates are nonzero but the spectrum is not an "
                              "arithmetic sequence symmetric about zero");
    }
    const int r = static_cast<int>(mults.size());
    const int u = step->u;
    int eta = sum_of_squares(mults);
    if (step->parity == Parity::Odd) {
        if (r != 2 * u + 1) throw InvalidArgument("eta_theorem3: r != 2u+1 for odd arithmetic structure");
        for (int i = 1; i <= u; ++i) eta += 2 * mults[i - 1] * mults[2 * u + 2 - i - 1];
        return {eta, EtaMethod::Theorem3Case2};
    }
    if (r != 2 * u) throw InvalidArgument("eta_theorem3: r != 2u for even arithmetic structure");
    for (int i = 1; i <= u; ++i) eta += 2 * mults[i - 1] * mults[2 * u + 1 - i - 1];
    return {eta, EtaMethod::Theorem3Case3};
}

ClosedFormSpectrum closed_form_spectrum(const SpectrumModel& model, const Evolution& evolution) {
    model.validate();
    if (std::holds_alternative<UnitaryConjugationEvolution>(evolution)) {
        return unitary_spectrum(model);
    }
    const auto& power = std::get<PowerModelEvolution>(evolution);
    return power_spectrum(model, power.rates);
}

std::optional<ClosedFormEta> closed_form_eta(const SpectrumModel& model, const Evolution& evolution,
                                             std::string* why_not) {
    auto fail = [&](std::string reason) -> std::optional<ClosedFormEta> {
        if (why_not != nullptr) *why_not = std::move(reason);
        return std::nullopt;
    };
    const int r = model.distinct();
    if (std::holds_alternative<UnitaryConjugationEvolution>(evolution)) {
        if (r == 1) {
            return ClosedFormEta{eta_theorem2(model.mults), EtaMethod::Theorem2};
        }
        const auto* g = std::get_if<GeometricRatio>(&model.structure);
        if (g == nullptr) {
            return fail("no closed form: eigenvalues of F do not form a geometric sequence");
        }
        const double theta = std::abs(ratio_angle(*g));
        if (!(theta > 0.0) || theta > std::numbers::pi / (r - 1) * (1.0 + 1e-12)) {
            return fail("no closed form: ratio angle outside (0, pi/(r-1)], diagonals may collide");
        }
        return ClosedFormEta{eta_theorem2(model.mults), EtaMethod::Theorem2};
    }
    const auto& power = std::get<PowerModelEvolution>(evolution);
    try {
        const auto res = eta_theorem3(model.mults, power.rates, model.structure);
        if (res.method == EtaMethod::Theorem3Case1) {
            for (const auto& c : power_spectrum(model, power.rates).spectrum.clusters) {
                if (c.algebraic > res.eta) {
                    return fail("no closed form: distinct pairs give equal values of -sum_k gamma_k (alpha_i^k - "
                                "alpha_j^k)^2, so the generic case-1 count does not hold");
                }
            }
        }
        return ClosedFormEta{res.eta, res.method};
    } catch (const InvalidArgument& e) {
        return fail(std::string("no closed form: ") + e.what());
    }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts < 1 || total < parts) return out;
    if (parts == 1) {
        out.push_back({total});
        return out;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        for (auto& rest : compositions(total - first, parts - 1)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    }
    return out;
}

std::vector<std::vector<int>> compositions(int total) {
    std::vector<std::vector<int>> out;
    for (int parts = 1; parts <= total; ++parts) {
        auto c = compositions(total, parts);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

}  // namespace qtomo
