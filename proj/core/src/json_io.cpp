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

#include "qtomo/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

namespace qtomo::json_io {

namespace {

void require_object(const Json& j, const char* what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw InvalidArgument(std::string(what) + ": expected a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) {
            throw InvalidArgument(std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

const Json& field(const Json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw InvalidArgument(std::string(what) + ": missing key '" + key + "'");
    }
    return *it;
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw InvalidArgument(std::string(what) + ": expected a number");
    return j.get<double>();
}

int integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidArgument(std::string(what) + ": expected an integer");
    return j.get<int>();
}

std::uint64_t unsigned_integer(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw InvalidArgument(std::string(what) + ": expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::vector<double> number_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string(what) + ": expected an array");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number(x, what));
    return out;
}

Json numbers_to_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidArgument("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = std::move(data);
    return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
    require_object(j, "matrix", {"rows", "cols", "data"});
    const int rows = integer(field(j, "rows", "matrix"), "matrix rows");
    const int cols = integer(field(j, "cols", "matrix"), "matrix cols");
    if (rows < 1 || cols < 1) throw InvalidArgument("matrix: rows and cols must be positive");
    const Json& data = field(j, "data", "matrix");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw InvalidArgument("matrix: data must hold rows * cols entries");
    }
    ComplexMatrix m(rows, cols);
    std::size_t idx = 0;
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[idx++]);
    }
    return m;
}

Json generator_spec_to_json(const GeneratorSpec& spec) {
    Json j;
    j["model"] = to_string(spec.model);
    if (spec.hamiltonian) j["H"] = matrix_to_json(*spec.hamiltonian);
    if (!spec.lindblad.empty()) {
        Json ops = Json::array();
        for (const auto& t : spec.lindblad) {
            Json o;
            o["V"] = matrix_to_json(t.op);
            o["gamma"] = t.rate;
            ops.push_back(std::move(o));
        }
        j["lindblad"] = std::move(ops);
    }
    if (spec.base_operator) j["F"] = matrix_to_json(*spec.base_operator);
    if (!spec.rates.empty()) j["rates"] = numbers_to_json(spec.rates);
    return j;
}

GeneratorSpec generator_spec_from_json(const Json& j) {
    require_object(j, "generator spec", {"model", "H", "lindblad", "F", "rates"});
    const Json& model = field(j, "model", "generator spec");
    if (!model.is_string()) throw InvalidArgument("generator spec: 'model' must be a string");
    GeneratorSpec spec;
    spec.model = model_kind_from_string(model.get<std::string>());
    if (j.contains("H")) spec.hamiltonian = matrix_from_json(j["H"]);
    if (j.contains("F")) spec.base_operator = matrix_from_json(j["F"]);
    if (j.contains("rates")) spec.rates = number_list(j["rates"], "generator spec rates");
    if (j.contains("lindblad")) {
        if (!j["lindblad"].is_array()) throw InvalidArgument("generator spec: 'lindblad' must be an array");
        for (const auto& o : j["lindblad"]) {
            require_object(o, "lindblad term", {"V", "gamma"});
            spec.lindblad.push_back(
                {matrix_from_json(field(o, "V", "lindblad term")), number(field(o, "gamma", "lindblad term"), "gamma")});
        }
    }
    return spec;
}

Json spectrum_model_to_json(const SpectrumModel& model) {
    Json j;
    Json alphas = Json::array();
    for (const auto& a : model.alphas) alphas.push_back(complex_to_json(a));
    j["alphas"] = std::move(alphas);
    j["mults"] = model.mults;
    Json s;
    if (const auto* g = std::get_if<GeometricRatio>(&model.structure)) {
        s["type"] = "geometric";
        s["q"] = complex_to_json(g->q);
    } else if (const auto* a = std::get_if<ArithmeticStep>(&model.structure)) {
        s["type"] = "arithmetic";
        s["c"] = a->c;
        s["u"] = a->u;
        s["parity"] = a->parity == Parity::Odd ? "odd" : "even";
    } else {
        s["type"] = "generic";
    }
    j["structure"] = std::move(s);
    return j;
}

SpectrumModel spectrum_model_from_json(const Json& j) {
    require_object(j, "spectrum model", {"alphas", "mults", "structure"});
    SpectrumModel model;
    const Json& alphas = field(j, "alphas", "spectrum model");
    if (!alphas.is_array()) throw InvalidArgument("spectrum model: 'alphas' must be an array");
    for (const auto& a : alphas) model.alphas.push_back(complex_from_json(a));
    const Json& mults = field(j, "mults", "spectrum model");
    if (!mults.is_array()) throw InvalidArgument("spectrum model: 'mults' must be an array");
    for (const auto& m : mults) model.mults.push_back(integer(m, "multiplicity"));

    if (j.contains("structure")) {
        const Json& s = j["structure"];
        if (!s.is_object() || !s.contains("type") || !s["type"].is_string()) {
            throw InvalidArgument("spectrum model: 'structure' needs a string 'type'");
        }
        const auto type = s["type"].get<std::string>();
        if (type == "generic") {
            require_object(s, "generic structure", {"type"});
        } else if (type == "geometric") {
            require_object(s, "geometric structure", {"type", "q"});
            model.structure = GeometricRatio{complex_from_json(field(s, "q", "geometric structure"))};
        } else if (type == "arithmetic") {
            require_object(s, "arithmetic structure", {"type", "c", "u", "parity"});
            ArithmeticStep step;
            step.c = number(field(s, "c", "arithmetic structure"), "c");
            step.u = integer(field(s, "u", "arithmetic structure"), "u");
            const Json& parity = field(s, "parity", "arithmetic structure");
            if (parity == "odd") {
                step.parity = Parity::Odd;
            } else if (parity == "even") {
                step.parity = Parity::Even;
            } else {
                throw InvalidArgument("arithmetic structure: parity must be \"odd\" or \"even\"");
            }
            model.structure = step;
        } else {
            throw InvalidArgument("spectrum model: unknown structure type '" + type + "'");
        }
    }
    model.validate();
    return model;
}

Json spectrum_to_json(const Spectrum& s) {
    Json a = Json::array();
    for (const auto& c : s.clusters) {
        Json e;
        e["value"] = complex_to_json(c.value);
        e["alg"] = c.algebraic;
        e["geo"] = c.geometric;
        a.push_back(std::move(e));
    }
    return a;
}

Json report_to_json(const CyclicityReport& report) {
    Json j;
    j["eta"] = report.eta;
    j["method"] = to_string(report.method);
    j["mu"] = report.min_poly_degree;
    Json attaining = Json::array();
    for (const auto& v : report.attaining) attaining.push_back(complex_to_json(v));
    j["attaining"] = std::move(attaining);
    j["spectrum"] = spectrum_to_json(report.spectrum);
    if (!report.warnings.empty()) j["warnings"] = report.warnings;
    return j;
}

Json plan_to_json(const ExperimentPlan& plan) {
    Json j;
    Json obs = Json::array();
    for (const auto& q : plan.observables) obs.push_back(matrix_to_json(q));
    j["observables"] = std::move(obs);
    j["times"] = numbers_to_json(plan.times);
    j["generator"] = matrix_to_json(plan.generator);
    return j;
}

ExperimentPlan plan_from_json(const Json& j) {
    require_object(j, "experiment plan", {"observables", "times", "generator"});
    ExperimentPlan plan;
    const Json& obs = field(j, "observables", "experiment plan");
    if (!obs.is_array()) throw InvalidArgument("experiment plan: 'observables' must be an array");
    for (const auto& q : obs) plan.observables.push_back(matrix_from_json(q));
    plan.times = number_list(field(j, "times", "experiment plan"), "experiment plan times");
    plan.generator = matrix_from_json(field(j, "generator", "experiment plan"));
    plan.validate();
    return plan;
}

Json record_to_json(const MeasurementRecord& record) {
    Json j;
    j["plan"] = plan_to_json(record.plan);
    Json values = Json::array();
    for (Index i = 0; i < record.values.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < record.values.cols(); ++k) row.push_back(record.values(i, k));
        values.push_back(std::move(row));
    }
    j["values"] = std::move(values);
    return j;
}

MeasurementRecord record_from_json(const Json& j) {
    require_object(j, "measurement record", {"plan", "values"});
    MeasurementRecord record;
    record.plan = plan_from_json(field(j, "plan", "measurement record"));
    const Json& values = field(j, "values", "measurement record");
    const auto s = static_cast<Index>(record.plan.observables.size());
    const auto m = static_cast<Index>(record.plan.times.size());
    if (!values.is_array() || static_cast<Index>(values.size()) != s) {
        throw InvalidArgument("measurement record: expected one row of values per observable");
    }
    record.values.resize(s, m);
    for (Index i = 0; i < s; ++i) {
        const auto row = number_list(values[static_cast<std::size_t>(i)], "measurement values");
        if (static_cast<Index>(row.size()) != m) {
            throw InvalidArgument("measurement record: expected one value per time instant");
        }
        for (Index k = 0; k < m; ++k) record.values(i, k) = row[static_cast<std::size_t>(k)];
    }
    return record;
}

void write_record_csv(const MeasurementRecord& record, std::ostream& out) {
    std::ostringstream os;
    os.precision(17);
    os << "observable";
    for (double t : record.plan.times) os << ',' << t;
    os << '\n';
    for (Index i = 0; i < record.values.rows(); ++i) {
        os << "Q" << (i + 1);
        for (Index k = 0; k < record.values.cols(); ++k) os << ',' << record.values(i, k);
        os << '\n';
    }
    out << os.str();
}

Json trial_to_json(const TrialInstance& trial) {
    Json j;
    j["theorem"] = to_string(trial.theorem);
    j["model"] = spectrum_model_to_json(trial.model);
    j["rates"] = numbers_to_json(trial.rates);
    j["basis_seed"] = trial.basis_seed;
    j["seed"] = trial.seed;
    return j;
}

TrialInstance trial_from_json(const Json& j) {
    require_object(j, "trial", {"theorem", "model", "rates", "basis_seed", "seed"});
    TrialInstance t;
    const Json& theorem = field(j, "theorem", "trial");
    if (!theorem.is_string()) throw InvalidArgument("trial: 'theorem' must be a string");
    t.theorem = theorem_case_from_string(theorem.get<std::string>());
    t.model = spectrum_model_from_json(field(j, "model", "trial"));
    if (j.contains("rates")) t.rates = number_list(j["rates"], "trial rates");
    t.basis_seed = unsigned_integer(field(j, "basis_seed", "trial"), "basis_seed");
    if (j.contains("seed")) t.seed = unsigned_integer(j["seed"], "seed");
    return t;
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

}  // namespace qtomo::json_io
