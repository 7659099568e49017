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

#include <benchmark/benchmark.h>

#include "qtomo/cyclicity.hpp"
#include "qtomo/generators.hpp"
#include "qtomo/tomography.hpp"
#include "qtomo/verification.hpp"

using namespace qtomo;

namespace {

ComplexMatrix unitary_generator(int n) {
    return build_unitary_conjugation(realize_unitary(geometric_model(0.3, std::vector<int>(n, 1)), 1));
}

void BM_BuildUnitaryConjugation(benchmark::State& state) {
    const auto f = random_unitary(state.range(0), 3);
    for (auto _ : state) benchmark::DoNotOptimize(build_unitary_conjugation(f));
}
BENCHMARK(BM_BuildUnitaryConjugation)->DenseRange(2, 6, 2);

void BM_BuildPowerModel(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const auto f = random_hermitian(n, 4);
    const std::vector<double> rates(static_cast<std::size_t>(n), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(build_power_model(f, rates));
}
BENCHMARK(BM_BuildPowerModel)->DenseRange(2, 6, 2);

void BM_BuildGksl(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const std::vector<LindbladTerm> terms{{random_unitary(n, 5), 0.5}, {random_hermitian(n, 6), 0.2}};
    const auto h = random_hermitian(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(build_gksl(h, terms));
}
BENCHMARK(BM_BuildGksl)->DenseRange(2, 6, 2);

void BM_EigClusteredHermitian(benchmark::State& state) {
    const auto l = unitary_generator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eig_clustered(l));
}
BENCHMARK(BM_EigClusteredHermitian)->DenseRange(2, 6, 2);

void BM_EigClusteredGeneral(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const std::vector<LindbladTerm> terms{{random_unitary(n, 8), 0.5}};
    const auto l = build_gksl(random_hermitian(n, 9), terms);
    for (auto _ : state) benchmark::DoNotOptimize(eig_clustered(l));
}
BENCHMARK(BM_EigClusteredGeneral)->DenseRange(2, 6, 2);

void BM_IndexOfCyclicity(benchmark::State& state) {
    const auto l = unitary_generator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(index_of_cyclicity(l));
}
BENCHMARK(BM_IndexOfCyclicity)->DenseRange(2, 6, 2);

void BM_RunTrial(benchmark::State& state) {
    const auto inst = sample_trial(TheoremCase::Theorem2, static_cast<int>(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(inst));
}
BENCHMARK(BM_RunTrial)->DenseRange(2, 6, 2);

void BM_Reconstruct(benchmark::State& state) {
    const auto n = static_cast<Index>(state.range(0));
    const auto l = unitary_generator(static_cast<int>(n));
    const auto plan = design_experiment(l, index_of_cyclicity(l).eta, 11);
    const auto record = synthesize(plan, random_density_matrix(n, 12));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(plan, record));
}
BENCHMARK(BM_Reconstruct)->DenseRange(2, 5, 1);

}  // namespace
BENCHMARK_MAIN();
