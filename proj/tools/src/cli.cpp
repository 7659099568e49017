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

#include "qtomo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "qtomo/cyclicity.hpp"
#include "qtomo/generators.hpp"
#include "qtomo/json_io.hpp"
#include "qtomo/tomography.hpp"
#include "qtomo/verification.hpp"

namespace qtomo::cli {

namespace {

using json_io::Json;

struct Options {
    std::string input;
    std::uint64_t seed = 0;
    int trials = 0;  // 0: command default
    std::string output;
    std::string format;  // empty: command default
    std::optional<double> theta;
    std::optional<double> step;
    std::optional<int> observables;
    double horizon = 1.0;
    std::string theorem;
    int dim = 4;
    std::string replay;
    std::string replay_dir = ".";
    std::string rho;
    std::string rates;
    std::optional<double> tau_clust;
    std::optional<double> tau_rank;
    double noise = 0.0;
    bool full_basis = false;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("qtomo", sink);
    logger->set_pattern("[%l] %v");
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("QTOMO_LOG")) {
        level = spdlog::level::from_str(env);
    }
    logger->set_level(level);
    return logger;
}

// --- output ----------------------------------------------------------------

class Output {
public:
    Output(const Options& opts, std::ostream& fallback) : fallback_(fallback) {
        if (!opts.output.empty()) {
            file_.open(opts.output);
            if (!file_) throw InvalidArgument("cannot open output file '" + opts.output + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_json(const Options& opts, std::ostream& out, const Json& j) {
    Output o(opts, out);
    o.stream() << j.dump(2) << '\n';
}

std::string format_or(const Options& opts, const std::string& fallback) {
    return opts.format.empty() ? fallback : opts.format;
}

std::string fmt_double(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

// --- inputs ----------------------------------------------------------------

using Input = std::variant<GeneratorSpec, SpectrumModel>;

Input load_input(const Options& opts) {
    if (opts.input.empty()) throw InvalidArgument("--input is required");
    const Json j = json_io::read_file(opts.input);
    if (j.is_object() && j.contains("alphas")) return json_io::spectrum_model_from_json(j);
    return json_io::generator_spec_from_json(j);
}

std::vector<double> parse_rates(const std::string& text) {
    std::vector<double> rates;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            rates.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("--rates: cannot parse '" + item + "'");
        }
    }
    return rates;
}

Evolution evolution_for(const Options& opts) {
    if (opts.rates.empty()) return UnitaryConjugationEvolution{};
    return PowerModelEvolution{parse_rates(opts.rates)};
}

bool on_unit_circle(const SpectrumModel& model) {
    return std::all_of(model.alphas.begin(), model.alphas.end(),
                       [](Complex a) { return std::abs(std::abs(a) - 1.0) <= 1e-10; });
}

// Generator and, when one exists, the spectral model it was built from.
struct Resolved {
    ComplexMatrix generator;
    std::optional<SpectrumModel> model;
    std::optional<Evolution> evolution;
};

Resolved resolve(const Input& input, const Options& opts) {
    Resolved r;
    if (const auto* spec = std::get_if<GeneratorSpec>(&input)) {
        r.generator = build(*spec);
        if (spec->model == ModelKind::UnitaryConjugation && spec->base_operator) {
            r.model = infer_spectrum_model(*spec->base_operator);
            r.evolution = UnitaryConjugationEvolution{};
        } else if (spec->model == ModelKind::PowerModel && spec->base_operator) {
            r.model = infer_spectrum_model(*spec->base_operator);
            r.evolution = PowerModelEvolution{spec->rates};
        }
        return r;
    }
    const auto& model = std::get<SpectrumModel>(input);
    model.validate();
    const Evolution evolution = evolution_for(opts);
    ComplexMatrix f;
    if (std::holds_alternative<UnitaryConjugationEvolution>(evolution)) {
        if (std::holds_alternative<GeometricRatio>(model.structure)) {
            f = realize_unitary(model, opts.seed);
        } else if (on_unit_circle(model)) {
            f = realize(model, opts.seed);
        } else {
            throw InvalidArgument("unitary conjugation needs eigenvalues on the unit circle");
        }
        r.generator = build_unitary_conjugation(f);
    } else {
        if (std::holds_alternative<ArithmeticStep>(model.structure)) {
            f = realize_hermitian(model, opts.seed);
        } else {
            const ComplexMatrix x = realize(model, opts.seed);
            f = 0.5 * (x + x.adjoint());
        }
        r.generator = build_power_model(f, std::get<PowerModelEvolution>(evolution).rates);
    }
    r.model = model;
    r.evolution = evolution;
    return r;
}

CyclicityOptions cyclicity_options(const Options& opts) { return {opts.tau_clust, opts.tau_rank}; }

// --- build -----------------------------------------------------------------

int cmd_build(const Options& opts, std::ostream& out, spdlog::logger& log) {
    const auto input = load_input(opts);
    const auto resolved = resolve(input, opts);
    const auto& l = resolved.generator;
    log.info("built {}x{} generator", l.rows(), l.cols());
    const auto format = format_or(opts, "json");
    if (format == "csv") {
        Output o(opts, out);
        o.stream() << "row,col,re,im\n";
        for (Index i = 0; i < l.rows(); ++i) {
            for (Index k = 0; k < l.cols(); ++k) {
                o.stream() << i << ',' << k << ',' << fmt_double(l(i, k).real()) << ','
                           << fmt_double(l(i, k).imag()) << '\n';
            }
        }
        return kSuccess;
    }
    Json j;
    j["dimension"] = static_cast<int>(std::lround(std::sqrt(static_cast<double>(l.rows()))));
    j["hermitian_residual"] = hermitian_residual(l);
    j["generator"] = json_io::matrix_to_json(l);
    emit_json(opts, out, j);
    return kSuccess;
}

// --- spectrum --------------------------------------------------------------

void write_spectrum_csv(std::ostream& s, const Spectrum& spectrum) {
    s << "re,im,alg,geo\n";
    for (const auto& c : spectrum.clusters) {
        s << fmt_double(c.value.real()) << ',' << fmt_double(c.value.imag()) << ',' << c.algebraic << ','
          << c.geometric << '\n';
    }
}

int cmd_spectrum(const Options& opts, std::ostream& out, spdlog::logger& log) {
    const auto input = load_input(opts);
    const auto resolved = resolve(input, opts);
    const auto numeric = eig_clustered(resolved.generator, opts.tau_clust, opts.tau_rank);
    std::optional<ClosedFormSpectrum> closed;
    if (resolved.model && resolved.evolution) {
        try {
            closed = closed_form_spectrum(*resolved.model, *resolved.evolution);
        } catch (const InvalidArgument& e) {
            log.info("no closed-form spectrum: {}", e.what());
        }
    }
    bool match = true;
    std::string detail;
    if (closed) match = spectra_match(numeric, closed->spectrum, 1e-8, &detail);

    const auto format = format_or(opts, "json");
    if (format == "csv") {
        Output o(opts, out);
        write_spectrum_csv(o.stream(), numeric);
    } else {
        Json j;
        j["spectrum"] = json_io::spectrum_to_json(numeric);
        if (closed) {
            j["closed_form"] = json_io::spectrum_to_json(closed->spectrum);
            j["match"] = match;
        }
        emit_json(opts, out, j);
    }
    if (!match) {
        log.error("numeric and closed-form spectra differ: {}", detail);
        return kVerifiedFailure;
    }
    return kSuccess;
}

// --- eta -------------------------------------------------------------------

int cmd_eta(const Options& opts, std::ostream& out, spdlog::logger& log) {
    const auto input = load_input(opts);
    const auto resolved = resolve(input, opts);
    const auto report = index_of_cyclicity(resolved.generator, cyclicity_options(opts));
    for (const auto& w : report.warnings) log.warn("{}", w);

    std::optional<ClosedFormEta> closed;
    std::string why_not;
    if (resolved.model && resolved.evolution) {
        closed = closed_form_eta(*resolved.model, *resolved.evolution, &why_not);
    } else {
        why_not = "no closed form for this generator family";
    }

    Json j = json_io::report_to_json(report);
    bool agree = true;
    if (closed) {
        agree = closed->eta == report.eta;
        j["method"] = agree ? "both-agree" : "mismatch";
        j["closed_form"] = {{"eta", closed->eta}, {"method", to_string(closed->method)}};
    } else {
        log.info("{}", why_not);
        j["closed_form"] = nullptr;
    }

    const auto format = format_or(opts, "json");
    if (format == "csv") {
        Output o(opts, out);
        o.stream() << "eta,method,mu,closed_form_eta\n"
                   << report.eta << ',' << j["method"].get<std::string>() << ',' << report.min_poly_degree << ','
                   << (closed ? std::to_string(closed->eta) : std::string()) << '\n';
    } else {
        emit_json(opts, out, j);
    }
    if (!agree) {
        log.error("numeric eta {} != closed-form eta {} ({})", report.eta, closed->eta, to_string(closed->method));
        return kVerifiedFailure;
    }
    return kSuccess;
}

// --- verify / sweep --------------------------------------------------------

std::vector<TheoremCase> selected_cases(const std::string& name, int dim) {
    const std::vector<TheoremCase> all{TheoremCase::Theorem2, TheoremCase::Theorem3Case1, TheoremCase::Theorem3Case2,
                                       TheoremCase::Theorem3Case3};
    std::vector<TheoremCase> cases;
    if (name.empty() || name == "all") {
        cases = all;
    } else if (name == "theorem3") {
        cases = {TheoremCase::Theorem3Case1, TheoremCase::Theorem3Case2, TheoremCase::Theorem3Case3};
    } else {
        return {theorem_case_from_string(name)};
    }
    // Cases 2 and 3 need r = 3 and r = 2 distinct eigenvalues at least.
    std::erase_if(cases, [dim](TheoremCase c) {
        return (c == TheoremCase::Theorem3Case2 && dim < 3) || (c == TheoremCase::Theorem3Case3 && dim < 2);
    });
    return cases;
}

std::uint64_t trial_seed(std::uint64_t base, TheoremCase c, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Json outcome_to_json(const TrialOutcome& o) {
    Json j;
    j["numeric_eta"] = o.numeric_eta;
    j["formula_eta"] = o.formula_eta;
    j["formula_method"] = to_string(o.formula_method);
    j["spectrum_match"] = o.spectrum_match;
    j["hermitian_residual"] = o.hermitian_residual;
    j["geometric_equals_algebraic"] = o.geometric_equals_algebraic;
    j["passed"] = o.passed();
    if (!o.detail.empty()) j["detail"] = o.detail;
    return j;
}

void check_forced_theta(const Options& opts) {
    if (opts.theta && !(*opts.theta > 0.0 && *opts.theta < std::numbers::pi)) {
        throw InvalidArgument("--theta must lie in (0, pi)");
    }
    if (opts.step && !(*opts.step > 0.0)) throw InvalidArgument("--step must be positive");
}

// Runs one instance; a violated precondition (e.g. a forced angle outside
// (0, pi/(r-1)]) is reported as InvalidArgument.
TrialOutcome run_checked(const TrialInstance& inst) {
    if (inst.theorem == TheoremCase::Theorem2) {
        const auto* g = std::get_if<GeometricRatio>(&inst.model.structure);
        const int r = inst.model.distinct();
        if (g != nullptr && r > 1) {
            const double theta = std::abs(ratio_angle(*g));
            if (theta > std::numbers::pi / (r - 1) * (1.0 + 1e-12)) {
                throw InvalidArgument("instance rejected: theta = " + fmt_double(theta) + " outside (0, pi/" +
                                      std::to_string(r - 1) + "] for r = " + std::to_string(r));
            }
        }
    }
    return run_trial(inst);
}

std::string write_replay(const Options& opts, const TrialInstance& inst) {
    std::filesystem::create_directories(opts.replay_dir);
    const auto path =
        std::filesystem::path(opts.replay_dir) / ("qtomo-replay-" + to_string(inst.theorem) + "-" +
                                                  std::to_string(inst.seed) + ".json");
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write replay file " + path.string());
    f << json_io::trial_to_json(inst).dump(2) << '\n';
    return path.string();
}

int cmd_replay(const Options& opts, std::ostream& out, spdlog::logger& log) {
    const auto inst = json_io::trial_from_json(json_io::read_file(opts.replay));
    const auto outcome = run_checked(inst);
    Json j;
    j["theorem"] = to_string(inst.theorem);
    j["seed"] = inst.seed;
    j["outcome"] = outcome_to_json(outcome);
    emit_json(opts, out, j);
    if (!outcome.passed()) {
        log.error("replayed instance fails: {}", outcome.detail);
        return kVerifiedFailure;
    }
    return kSuccess;
}

struct CaseTally {
    TheoremCase theorem;
    int trials = 0;
    int passed = 0;
};

int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err, spdlog::logger& log) {
    if (!opts.replay.empty()) return cmd_replay(opts, out, log);
    check_forced_theta(opts);
    const int trials = opts.trials > 0 ? opts.trials : 100;
    const auto cases = selected_cases(opts.theorem, opts.dim);
    if (cases.empty()) throw InvalidArgument("no theorem case applies at --dim " + std::to_string(opts.dim));

    SamplingOptions sampling;
    sampling.theta = opts.theta;
    sampling.step = opts.step;

    std::vector<CaseTally> tallies;
    Json failures = Json::array();
    for (auto c : cases) {
        CaseTally tally{c};
        for (int t = 0; t < trials; ++t) {
            const auto inst = sample_trial(c, opts.dim, trial_seed(opts.seed, c, static_cast<std::uint64_t>(t)),
                                           sampling);
            const auto outcome = run_checked(inst);
            ++tally.trials;
            if (outcome.passed()) {
                ++tally.passed;
                continue;
            }
            const auto path = write_replay(opts, inst);
            err << "mismatch: " << to_string(c) << " trial " << t << " seed " << inst.seed << ": " << outcome.detail
                << "\n  replay: " << path << '\n';
            Json f;
            f["theorem"] = to_string(c);
            f["trial"] = t;
            f["seed"] = inst.seed;
            f["replay"] = path;
            f["instance"] = json_io::trial_to_json(inst);
            f["outcome"] = outcome_to_json(outcome);
            failures.push_back(std::move(f));
        }
        log.info("{}: {}/{} passed", to_string(c), tally.passed, tally.trials);
        tallies.push_back(tally);
    }

    const bool ok = failures.empty();
    const auto format = format_or(opts, "table");
    Output o(opts, out);
    if (format == "json") {
        Json j;
        j["dim"] = opts.dim;
        j["seed"] = opts.seed;
        Json rows = Json::array();
        for (const auto& t : tallies) {
            rows.push_back({{"theorem", to_string(t.theorem)}, {"trials", t.trials}, {"passed", t.passed}});
        }
        j["cases"] = std::move(rows);
        j["failures"] = std::move(failures);
        j["all_passed"] = ok;
        o.stream() << j.dump(2) << '\n';
    } else if (format == "csv") {
        o.stream() << "theorem,trials,passed,failed\n";
        for (const auto& t : tallies) {
            o.stream() << to_string(t.theorem) << ',' << t.trials << ',' << t.passed << ',' << t.trials - t.passed
                       << '\n';
        }
    } else {
        o.stream() << std::left << std::setw(16) << "theorem" << std::right << std::setw(8) << "trials"
                   << std::setw(8) << "passed" << std::setw(8) << "failed" << "  result\n";
        for (const auto& t : tallies) {
            o.stream() << std::left << std::setw(16) << to_string(t.theorem) << std::right << std::setw(8)
                       << t.trials << std::setw(8) << t.passed << std::setw(8) << t.trials - t.passed << "  "
                       << (t.passed == t.trials ? "PASS" : "FAIL") << '\n';
        }
    }
    return ok ? kSuccess : kVerifiedFailure;
}

bool partition_fits(TheoremCase c, const std::vector<int>& mults) {
    const auto r = mults.size();
    switch (c) {
        case TheoremCase::Theorem2:
        case TheoremCase::Theorem3Case1: return true;
        case TheoremCase::Theorem3Case2: return r >= 3 && r % 2 == 1;
        case TheoremCase::Theorem3Case3: return r >= 2 && r % 2 == 0;
    }
    return false;
}

std::string join(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

int cmd_sweep(const Options& opts, std::ostream& out, std::ostream& err, spdlog::logger& log) {
    check_forced_theta(opts);
    const int trials = opts.trials > 0 ? opts.trials : 20;
    const auto c = opts.theorem.empty() ? TheoremCase::Theorem2 : theorem_case_from_string(opts.theorem);
    if (opts.dim < 1) throw InvalidArgument("--dim must be positive");

    SamplingOptions sampling;
    sampling.theta = opts.theta;
    sampling.step = opts.step;

    struct Row {
        std::vector<int> mults;
        int formula = 0;
        int numeric_min = 0;
        int numeric_max = 0;
        int passed = 0;
    };
    std::vector<Row> rows;
    bool ok = true;
    std::uint64_t index = 0;
    for (const auto& mults : compositions(opts.dim)) {
        if (!partition_fits(c, mults)) continue;
        Row row{mults};
        row.numeric_min = opts.dim * opts.dim + 1;
        sampling.mults = mults;
        for (int t = 0; t < trials; ++t) {
            const auto inst = sample_trial(c, opts.dim, trial_seed(opts.seed, c, index++), sampling);
            const auto outcome = run_checked(inst);
            row.formula = outcome.formula_eta;
            row.numeric_min = std::min(row.numeric_min, outcome.numeric_eta);
            row.numeric_max = std::max(row.numeric_max, outcome.numeric_eta);
            if (outcome.passed()) {
                ++row.passed;
            } else {
                ok = false;
                const auto path = write_replay(opts, inst);
                err << "mismatch: n=(" << join(mults, ',') << ") seed " << inst.seed << ": " << outcome.detail
                    << "\n  replay: " << path << '\n';
            }
        }
        log.info("n=({}): {}/{} passed", join(mults, ','), row.passed, trials);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidArgument("no multiplicity partition of " + std::to_string(opts.dim) + " fits " +
                                            to_string(c));

    const auto format = format_or(opts, "table");
    Output o(opts, out);
    if (format == "json") {
        Json j;
        j["theorem"] = to_string(c);
        j["dim"] = opts.dim;
        j["trials_per_partition"] = trials;
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back({{"mults", r.mults},
                           {"formula_eta", r.formula},
                           {"numeric_eta_min", r.numeric_min},
                           {"numeric_eta_max", r.numeric_max},
                           {"passed", r.passed}});
        }
        j["partitions"] = std::move(arr);
        j["all_passed"] = ok;
        o.stream() << j.dump(2) << '\n';
    } else if (format == "csv") {
        o.stream() << "mults,formula_eta,numeric_eta_min,numeric_eta_max,trials,passed\n";
        for (const auto& r : rows) {
            o.stream() << join(r.mults, ' ') << ',' << r.formula << ',' << r.numeric_min << ',' << r.numeric_max
                       << ',' << trials << ',' << r.passed << '\n';
        }
    } else {
        o.stream() << std::left << std::setw(18) << "mults" << std::right << std::setw(8) << "formula"
                   << std::setw(9) << "numeric" << std::setw(8) << "passed\n";
        for (const auto& r : rows) {
            const std::string numeric = r.numeric_min == r.numeric_max
                                            ? std::to_string(r.numeric_min)
                                            : std::to_string(r.numeric_min) + "-" + std::to_string(r.numeric_max);
            o.stream() << std::left << std::setw(18) << ("(" + join(r.mults, ',') + ")") << std::right
                       << std::setw(8) << r.formula << std::setw(9) << numeric << std::setw(5) << r.passed << '/'
                       << trials << '\n';
        }
    }
    return ok ? kSuccess : kVerifiedFailure;
}

// --- reconstruct -----------------------------------------------------------

int cmd_reconstruct(const Options& opts, std::ostream& out, std::ostream& err, spdlog::logger& log) {
    const auto input = load_input(opts);
    const auto resolved = resolve(input, opts);
    const auto& l = resolved.generator;
    const auto n = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(l.rows()))));

    ComplexMatrix rho0;
    if (!opts.rho.empty()) {
        rho0 = json_io::matrix_from_json(json_io::read_file(opts.rho));
        if (rho0.rows() != n || rho0.cols() != n) throw InvalidArgument("--rho dimension does not match the generator");
        validate_density_matrix(rho0);
    } else {
        rho0 = random_density_matrix(n, opts.seed);
    }

    const int eta = index_of_cyclicity(l, cyclicity_options(opts)).eta;
    ExperimentPlan plan;
    if (opts.full_basis) {
        plan = plan_with_observables(l, hermitian_basis(n), opts.horizon);
    } else {
        const int count = opts.observables.value_or(eta);
        if (count < 1) throw InvalidArgument("--observables must be positive");
        plan = design_experiment(l, count, opts.seed + 1, {.horizon = opts.horizon, .include_identity = false});
    }
    log.info("eta = {}, {} observables at {} times", eta, plan.observables.size(), plan.times.size());
    const auto record = synthesize(plan, rho0, {.sigma = opts.noise, .seed = opts.seed + 2});

    Json j;
    j["dimension"] = n;
    j["eta"] = eta;
    j["observables"] = plan.observables.size();
    j["times"] = plan.times;
    const int required = static_cast<int>(n * n);
    int status = kSuccess;
    try {
        const auto rec = reconstruct(plan, record);
        const double error = (rec.rho - rho0).norm();
        j["rank"] = rec.rank;
        j["required"] = required;
        j["error"] = error;
        j["residual"] = rec.residual;
        j["min_eigenvalue"] = rec.min_eigenvalue;
        j["positive_semidefinite"] = rec.positive_semidefinite;
        j["passed"] = error < 1e-6;
        if (!(error < 1e-6)) {
            err << "reconstruction error " << fmt_double(error) << " >= 1e-6\n";
            status = kVerifiedFailure;
        }
    } catch (const UnderdeterminedSystem& e) {
        j["rank"] = e.rank();
        j["required"] = e.required();
        j["passed"] = false;
        err << "rank " << e.rank() << " < " << e.required() << ": the plan does not determine the state\n";
        status = kVerifiedFailure;
    }

    if (format_or(opts, "json") == "csv") {
        Output o(opts, out);
        json_io::write_record_csv(record, o.stream());
    } else {
        emit_json(opts, out, j);
    }
    return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qtomo: generators, index of cyclicity and stroboscopic tomography", "qtomo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Options opts;
    const auto formats = CLI::IsMember({"json", "csv", "table"});
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", opts.input, "GeneratorSpec or SpectrumModel JSON file");
        cmd->add_option("--seed", opts.seed, "seed for bases, states and observables");
        cmd->add_option("--output", opts.output, "write the result here instead of stdout");
        cmd->add_option("--format", opts.format, "json, csv, or table (verify and sweep)")->check(formats);
        cmd->add_option("--rates", opts.rates, "comma-separated power-model rates for a SpectrumModel input");
        cmd->add_option("--tau-clust", opts.tau_clust, "eigenvalue clustering tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tau-rank", opts.tau_rank, "singular-value rank threshold")->check(CLI::PositiveNumber);
    };
    auto add_sampling = [&](CLI::App* cmd) {
        cmd->add_option("--trials", opts.trials, "random instances per case or partition")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--theorem", opts.theorem,
                        "theorem2, theorem3-case1, theorem3-case2, theorem3-case3, theorem3 or all");
        cmd->add_option("--dim", opts.dim, "Hilbert-space dimension N")->check(CLI::PositiveNumber);
        cmd->add_option("--theta", opts.theta, "force the geometric ratio angle");
        cmd->add_option("--step", opts.step, "force the arithmetic step c");
        cmd->add_option("--replay-dir", opts.replay_dir, "directory for replay files of failing instances");
    };

    auto* build_cmd = app.add_subcommand("build", "build the generator matrix");
    add_common(build_cmd);
    auto* spectrum_cmd = app.add_subcommand("spectrum", "clustered spectrum, with the closed form when known");
    add_common(spectrum_cmd);
    auto* eta_cmd = app.add_subcommand("eta", "index of cyclicity, numeric and closed form");
    add_common(eta_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "randomized numeric vs closed-form eta sweep per theorem case");
    add_common(verify_cmd);
    add_sampling(verify_cmd);
    verify_cmd->add_option("--replay", opts.replay, "rerun the single instance stored in a replay file");
    auto* sweep_cmd = app.add_subcommand("sweep", "numeric vs closed-form eta over every partition of N");
    add_common(sweep_cmd);
    add_sampling(sweep_cmd);
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "simulate stroboscopic tomography of a state");
    add_common(reconstruct_cmd);
    reconstruct_cmd->add_option("--observables", opts.observables, "number of observables (default eta)");
    reconstruct_cmd->add_option("--horizon", opts.horizon, "last sampling time in units of 1/||L||")
        ->check(CLI::PositiveNumber);
    reconstruct_cmd->add_option("--rho", opts.rho, "initial density matrix JSON (default: seeded random)");
    reconstruct_cmd->add_option("--noise", opts.noise, "Gaussian noise sigma on the data")
        ->check(CLI::NonNegativeNumber);
    reconstruct_cmd->add_flag("--full-basis", opts.full_basis, "measure all N^2 basis observables");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "qtomo: " << e.what() << '\n';
        if (e.get_exit_code() == 0) return kSuccess;
        err << "run 'qtomo --help' for usage\n";
        return kUsageError;
    }

    auto log = make_logger(err);
    try {
        if (build_cmd->parsed()) return cmd_build(opts, out, *log);
        if (spectrum_cmd->parsed()) return cmd_spectrum(opts, out, *log);
        if (eta_cmd->parsed()) return cmd_eta(opts, out, *log);
        if (verify_cmd->parsed()) return cmd_verify(opts, out, err, *log);
        if (sweep_cmd->parsed()) return cmd_sweep(opts, out, err, *log);
        if (reconstruct_cmd->parsed()) return cmd_reconstruct(opts, out, err, *log);
    } catch (const InvalidArgument& e) {
        err << "qtomo: " << e.what() << '\n';
        return kUsageError;
    } catch (const NumericalError& e) {
        err << "qtomo: numerical failure: " << e.what() << '\n';
        return kVerifiedFailure;
    } catch (const std::exception& e) {
        err << "qtomo: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace qtomo::cli
