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

#include <sstream>

#include <gtest/gtest.h>

#include "qtomo/json_io.hpp"

using namespace qtomo;
namespace jio = qtomo::json_io;

TEST(JsonIo, ComplexRoundTrip) {
    const Complex z{0.25, -3.5};
    EXPECT_EQ(jio::complex_from_json(jio::complex_to_json(z)), z);
    EXPECT_THROW((void)jio::complex_from_json(jio::parse("[1, 2, 3]")), InvalidArgument);
}

TEST(JsonIo, MatrixRoundTripIsRowMajor) {
    ComplexMatrix m(2, 3);
    m << 1.0, 2.0, Complex{0.0, 1.0}, 4.0, 5.0, 6.0;
    const auto j = jio::matrix_to_json(m);
    EXPECT_EQ(j["data"][2], jio::parse("[0.0, 1.0]"));
    EXPECT_EQ(jio::matrix_from_json(j), m);
}

TEST(JsonIo, MatrixRejectsMalformedInput) {
    EXPECT_THROW((void)jio::matrix_from_json(jio::parse(R"({"rows":1,"cols":1,"data":[[1,0]],"x":1})")),
                 InvalidArgument);
    EXPECT_THROW((void)jio::matrix_from_json(jio::parse(R"({"rows":2,"cols":1,"data":[[1,0]]})")), InvalidArgument);
    EXPECT_THROW((void)jio::matrix_from_json(jio::parse(R"({"rows":1,"data":[[1,0]]})")), InvalidArgument);
}

TEST(JsonIo, GeneratorSpecRoundTrip) {
    GeneratorSpec spec;
    spec.model = ModelKind::Gksl;
    spec.hamiltonian = ComplexMatrix::Identity(2, 2);
    ComplexMatrix v = ComplexMatrix::Zero(2, 2);
    v(0, 1) = 1.0;
    spec.lindblad.push_back({v, 0.3});
    const auto back = jio::generator_spec_from_json(jio::generator_spec_to_json(spec));
    EXPECT_EQ(back.model, ModelKind::Gksl);
    ASSERT_TRUE(back.hamiltonian.has_value());
    EXPECT_EQ(*back.hamiltonian, *spec.hamiltonian);
    ASSERT_EQ(back.lindblad.size(), 1u);
    EXPECT_EQ(back.lindblad[0].op, v);
    EXPECT_EQ(back.lindblad[0].rate, 0.3);
    EXPECT_TRUE(build(back).isApprox(build(spec)));
}

TEST(JsonIo, GeneratorSpecRejectsUnknownKeysAndModels) {
    EXPECT_THROW((void)jio::generator_spec_from_json(jio::parse(R"({"model":"GKSL","Hamiltonian":1})")),
                 InvalidArgument);
    EXPECT_THROW((void)jio::generator_spec_from_json(jio::parse(R"({"model":"Heat"})")), InvalidArgument);
    EXPECT_THROW((void)jio::generator_spec_from_json(jio::parse(R"({"model":"GKSL","lindblad":[{"V":1}]})")),
                 InvalidArgument);
}

TEST(JsonIo, SpectrumModelRoundTrip) {
    for (const auto& model : {geometric_model(0.4, {1, 2}), arithmetic_model(Parity::Even, 2, 0.5, {1, 1, 2, 1})}) {
        const auto back = jio::spectrum_model_from_json(jio::spectrum_model_to_json(model));
        EXPECT_EQ(back.alphas, model.alphas);
        EXPECT_EQ(back.mults, model.mults);
        EXPECT_EQ(back.structure.index(), model.structure.index());
    }
    EXPECT_THROW((void)jio::spectrum_model_from_json(
                     jio::parse(R"({"alphas":[[1,0]],"mults":[1],"structure":{"type":"spiral"}})")),
                 InvalidArgument);
}

TEST(JsonIo, ReportHasStableKeys) {
    CyclicityReport report;
    report.eta = 4;
    report.min_poly_degree = 3;
    report.attaining = {Complex{0.0, 0.0}};
    const auto j = jio::report_to_json(report);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"eta", "method", "mu", "attaining", "spectrum"}));
    EXPECT_EQ(j["method"], "Numeric");
}

TEST(JsonIo, RecordRoundTripAndCsv) {
    ExperimentPlan plan;
    plan.generator = ComplexMatrix::Zero(4, 4);
    plan.observables = {ComplexMatrix::Identity(2, 2)};
    plan.times = {0.5, 1.0};
    MeasurementRecord record{Eigen::MatrixXd::Constant(1, 2, 1.0), plan};
    const auto back = jio::record_from_json(jio::record_to_json(record));
    EXPECT_EQ(back.values, record.values);
    EXPECT_EQ(back.plan.times, plan.times);
    EXPECT_EQ(back.plan.generator, plan.generator);

    std::ostringstream csv;
    jio::write_record_csv(record, csv);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "observable,0.5,1");
    EXPECT_EQ(csv.str().find("Q1,"), csv.str().find('\n') + 1);
}

TEST(JsonIo, TrialRoundTrip) {
    const auto trial = sample_trial(TheoremCase::Theorem3Case2, 4, 12);
    const auto back = jio::trial_from_json(jio::trial_to_json(trial));
    EXPECT_EQ(back.theorem, trial.theorem);
    EXPECT_EQ(back.rates, trial.rates);
    EXPECT_EQ(back.basis_seed, trial.basis_seed);
    EXPECT_EQ(back.model.alphas, trial.model.alphas);
    EXPECT_EQ(run_trial(back).numeric_eta, run_trial(trial).numeric_eta);
}

TEST(JsonIo, ParseErrorsBecomeInvalidArgument) {
    EXPECT_THROW((void)jio::parse("{not json"), InvalidArgument);
    EXPECT_THROW((void)jio::read_file("/nonexistent/qtomo.json"), InvalidArgument);
}
