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

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qtomo/cyclicity.hpp"
#include "qtomo/generators.hpp"
#include "qtomo/matrix_core.hpp"
#include "qtomo/tomography.hpp"
#include "qtomo/verification.hpp"

// JSON formats shared by the library and the command-line tool. Every
// reader rejects unknown keys and throws InvalidArgument on malformed input.
namespace qtomo::json_io {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json complex_to_json(Complex z);               // [re, im]
[[nodiscard]] Complex complex_from_json(const Json& j);

// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
[[nodiscard]] Json matrix_to_json(const ComplexMatrix& m);
[[nodiscard]] ComplexMatrix matrix_from_json(const Json& j);

// {"model": ..., "H": matrix?, "lindblad": [{"V": matrix, "gamma": x}]?,
//  "F": matrix?, "rates": [x, ...]?}
[[nodiscard]] Json generator_spec_to_json(const GeneratorSpec& spec);
[[nodiscard]] GeneratorSpec generator_spec_from_json(const Json& j);

// {"alphas": [[re, im], ...], "mults": [n, ...], "structure": {...}}
// structure: {"type": "generic"} | {"type": "geometric", "q": [re, im]} |
//            {"type": "arithmetic", "c": x, "u": n, "parity": "odd"|"even"}
[[nodiscard]] Json spectrum_model_to_json(const SpectrumModel& model);
[[nodiscard]] SpectrumModel spectrum_model_from_json(const Json& j);

// [{"value": [re, im], "alg": a, "geo": g}, ...]
[[nodiscard]] Json spectrum_to_json(const Spectrum& s);

// {"eta": n, "method": "...", "mu": d, "attaining": [...], "spectrum": [...]}
[[nodiscard]] Json report_to_json(const CyclicityReport& report);

// {"observables": [matrix, ...], "times": [...], "generator": matrix}
[[nodiscard]] Json plan_to_json(const ExperimentPlan& plan);
[[nodiscard]] ExperimentPlan plan_from_json(const Json& j);

// {"plan": plan, "values": [[m_11, m_12, ...], ...]}
[[nodiscard]] Json record_to_json(const MeasurementRecord& record);
[[nodiscard]] MeasurementRecord record_from_json(const Json& j);

/// Header "observable,<t_1>,...,<t_m>", then one row per observable.
void write_record_csv(const MeasurementRecord& record, std::ostream& out);

// Replay file for a randomized trial.
[[nodiscard]] Json trial_to_json(const TrialInstance& trial);
[[nodiscard]] TrialInstance trial_from_json(const Json& j);

/// Parses text, converting parse errors to InvalidArgument.
[[nodiscard]] Json parse(const std::string& text);
[[nodiscard]] Json read_file(const std::string& path);

}  // namespace qtomo::json_io
