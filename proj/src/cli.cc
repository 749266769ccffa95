// Copyright 2026 The telecost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "telecost/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>

#include "json.hpp"
#include "telecost/errors.h"
#include "telecost/ledger.h"
#include "telecost/protocol.h"
#include "telecost/stats.h"
#include "telecost/verify.h"

namespace telecost {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kIdentityTol = 1e-10;
constexpr double kUniformitySignificance = 1e-3;
constexpr double kNoSignalingSigmas = 5.0;
constexpr int kNoSignalingBases = 100;
constexpr double kSweepSigmas = 4.0;
constexpr int kSweepMaxBits = 12;
// Expected full-precision failures below which the sampled ratio is not tested.
constexpr double kSweepMinExpectedFailures = 25.0;
constexpr std::size_t kFrequencyBatches = 200;
constexpr double kKsAlpha = 1e-3;

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct Result {
    std::vector<Json> rows;
    Json records = Json::array();
    Json ledger = nullptr;
    Json reports = Json::array();
    std::vector<Check> checks;

    void check(std::string name, bool passed, std::string detail) {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }
};

const std::vector<std::pair<Experiment, const char*>>& experiment_names() {
    static const std::vector<std::pair<Experiment, const char*>> names{
        {Experiment::TeleportIdentity, "teleport_identity"},
        {Experiment::OutcomeUniformity, "outcome_uniformity"},
        {Experiment::NoSignaling, "no_signaling"},
        {Experiment::VerifyBound, "verify_bound"},
        {Experiment::TruncationSweep, "truncation_sweep"},
        {Experiment::RspEquatorial, "rsp_equatorial"},
        {Experiment::FrequencyCheck, "frequency_check"},
        {Experiment::LedgerReport, "ledger_report"},
        {Experiment::ResolutionTable, "resolution_table"},
    };
    return names;
}

template <typename T>
std::optional<T> parse_integer(const std::string& text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

Json to_json(const PureQubit& s) { return Json::array({s.a0.real(), s.a0.imag(), s.a1.real(), s.a1.imag()}); }

Json to_json(const GridPoint& g) {
    Json j;
    j["mode"] = to_string(g.spec.mode);
    j["m"] = g.spec.m;
    j["indices"] = g.spec.mode == GridMode::RealRotation ? Json::array({g.indices[0]})
                                                         : Json::array({g.indices[0], g.indices[1]});
    return j;
}

Json to_json(const LedgerRecord& rec) {
    Json j;
    j["protocol"] = to_string(rec.protocol);
    j["c"] = rec.classical_bits_c;
    j["m"] = rec.prep_bits_m;
    j["n"] = rec.truncated_bits_n;
    j["hidden_cost"] = rec.hidden_cost();
    j["epr_pairs"] = rec.epr_pairs_consumed;
    j["verified_bits"] = rec.verified_bits;
    j["epr_bits_if_m_minus_c"] = rec.epr_bits_if_m_minus_c();
    j["epr_bits_if_m_plus_c"] = rec.epr_bits_if_m_plus_c();
    return j;
}

Json to_json(const LedgerSummary& s) {
    Json j;
    j["runs"] = s.runs;
    j["qt_runs"] = s.qt_runs;
    j["rsp_runs"] = s.rsp_runs;
    j["classical_bits"] = s.classical_bits;
    j["prep_bits"] = s.prep_bits;
    j["epr_pairs"] = s.epr_pairs;
    j["hidden_bits"] = s.hidden_bits;
    return j;
}

Json to_json(const RunRecord& run) {
    Json j;
    j["protocol"] = to_string(run.protocol);
    j["prep_bits"] = run.prep_bits;
    j["prepared"] = run.prepared ? to_json(*run.prepared) : Json(nullptr);
    j["input"] = to_json(run.input);
    j["outcome"] = run.outcome;
    j["message"] = run.message.bits;
    j["bob_final"] = run.bob_final ? to_json(*run.bob_final) : Json(nullptr);
    j["fidelity"] = run.bob_final ? fidelity(run.input, *run.bob_final) : 0.0;
    j["ledger"] = run.ledger ? to_json(*run.ledger) : Json(nullptr);
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["p_hat"] = r.p_hat;
    j["bound"] = r.bound;
    j["passed"] = r.passed;
    return j;
}

std::string cell(const Json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_float()) {
        return fmt::format("{:.10g}", v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string render_csv(const std::vector<Json>& rows) {
    std::string out;
    if (rows.empty()) {
        return out;
    }
    bool first = true;
    for (const auto& item : rows.front().items()) {
        out += first ? "" : ",";
        out += item.key();
        first = false;
    }
    out += "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& item : row.items()) {
            out += first ? "" : ",";
            out += cell(item.value());
            first = false;
        }
        out += "\n";
    }
    return out;
}

Json config_json(const ExperimentConfig& c) {
    Json j;
    j["experiment"] = to_string(c.experiment);
    j["m"] = c.m;
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["mode"] = to_string(c.mode);
    j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
    return j;
}

std::string render_json(const ExperimentConfig& c, const Result& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["generator"] = {{"name", "telecost"}, {"rng", Rng::kAlgorithm}};
    j["config"] = config_json(c);
    j["records"] = r.records;
    j["ledger"] = r.ledger;
    j["reports"] = r.reports;
    Json checks = Json::array();
    for (const auto& chk : r.checks) {
        checks.push_back({{"name", chk.name}, {"passed", chk.passed}, {"detail", chk.detail}});
    }
    j["checks"] = checks;
    j["table"] = r.rows;
    return j.dump(2) + "\n";
}

// Experiments.

void teleport_identity(const ExperimentConfig& c, Result& r) {
    const PrecisionSpec spec{c.m, c.mode};
    Rng state_rng = Rng::substream(c.seed, 0);
    Rng run_rng = Rng::substream(c.seed, 1);
    const auto pair = TwoQubitState::singlet();
    double min_fid = 1.0;
    double max_prob_dev = 0.0;
    LedgerSummary summary;
    for (std::uint64_t t = 0; t < c.trials; t++) {
        GridPoint g = random_grid_point(spec, state_rng);
        PureQubit input = prepare(g);
        auto branches = bell_branches(input, pair);
        for (int k = 0; k < 4; k++) {
            PureQubit out = qt_correct(branches[k].bob_conditional, encode_bell_outcome(k));
            double fid = fidelity(input, out);
            min_fid = std::min(min_fid, fid);
            max_prob_dev = std::max(max_prob_dev, std::abs(branches[k].probability - 0.25));
            r.rows.push_back(Json{{"state", t},
                                  {"i0", g.indices[0]},
                                  {"i1", g.indices[1]},
                                  {"outcome", k},
                                  {"probability", branches[k].probability},
                                  {"fidelity", fid}});
        }
        auto resource = EprResource::singlet();
        RunRecord run = teleport(g, resource, run_rng);
        min_fid = std::min(min_fid, fidelity(input, *run.bob_final));
        summary.add(*run.ledger);
        r.records.push_back(to_json(run));
    }
    r.ledger = to_json(summary);
    r.check("teleport_identity", min_fid >= 1.0 - kIdentityTol,
            fmt::format("min fidelity {:.17g} over {} states x 4 outcomes", min_fid, c.trials));
    r.check("bell_outcome_probabilities", max_prob_dev <= kAlgebraTol,
            fmt::format("max |p - 1/4| = {:.3g}", max_prob_dev));
}

struct OutcomeCounts {
    std::array<std::uint64_t, 4> n{};
    OutcomeCounts& operator+=(const OutcomeCounts& o) {
        for (int k = 0; k < 4; k++) {
            n[k] += o.n[k];
        }
        return *this;
    }
};

void outcome_uniformity(const ExperimentConfig& c, Result& r) {
    const PrecisionSpec spec{c.m, c.mode};
    auto counts = run_trial_blocks<OutcomeCounts>(
        c.trials, c.seed,
        [&](Rng& rng, std::uint64_t begin, std::uint64_t end) {
            OutcomeCounts oc;
            for (std::uint64_t t = begin; t < end; t++) {
                PureQubit input = prepare(random_grid_point(spec, rng));
                auto resource = EprResource::singlet();
                oc.n[bell_measure(input, resource, rng).outcome]++;
            }
            return oc;
        },
        c.threads);
    auto est = estimate_from_counts({counts.n.begin(), counts.n.end()});
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    auto fit = consistency_check(est, uniform, kUniformitySignificance);
    for (std::size_t k = 0; k < 4; k++) {
        r.rows.push_back(
            Json{{"category", k}, {"count", est.counts[k]}, {"frequency", est.f[k]}, {"sigma", est.sigma[k]}});
    }
    r.reports.push_back(Json{{"test", fit.exact ? "exact_multinomial" : "chi_square"},
                             {"statistic", fit.statistic},
                             {"dof", fit.dof},
                             {"p_value", fit.p_value},
                             {"significance", kUniformitySignificance},
                             {"accepted", fit.accepted}});
    r.check("bell_outcome_uniformity", fit.accepted,
            fmt::format("statistic {:.6g}, p-value {:.6g}, N = {}", fit.statistic, fit.p_value, est.n));
}

Json probe_row(const std::string& kind, const std::string& basis, const ProbeResult& p) {
    return Json{{"kind", kind},         {"basis", basis},          {"runs", p.runs},
                {"x", p.bloch[0]},      {"y", p.bloch[1]},         {"z", p.bloch[2]},
                {"sx", p.bloch_sigma[0]}, {"sy", p.bloch_sigma[1]}, {"sz", p.bloch_sigma[2]}};
}

void no_signaling(const ExperimentConfig& c, Result& r) {
    Rng basis_rng = Rng::substream(c.seed, 0);
    const auto resource = EprResource::singlet();
    const auto mixed = DensityOp::maximally_mixed();
    double max_dev = 0.0;
    for (int b = 0; b < kNoSignalingBases; b++) {
        PureQubit basis = haar_random_state(basis_rng);
        ProbeResult exact = no_signaling_probe(resource, basis, 0, basis_rng);
        max_dev = std::max(max_dev, exact.bob.m.max_abs_diff(mixed.m));
        r.rows.push_back(probe_row("analytic", fmt::format("random_{}", b), exact));
    }
    r.check("analytic_marginal", max_dev < kAlgebraTol,
            fmt::format("max elementwise deviation from I/2 = {:.3g} over {} bases", max_dev, kNoSignalingBases));
    if (c.trials == 0) {
        return;
    }
    const std::array<double, 2> angles{0.0, std::numbers::pi / 2};
    std::array<ProbeResult, 2> sampled;
    for (int a = 0; a < 2; a++) {
        Rng rng = Rng::substream(c.seed, 1 + static_cast<std::uint64_t>(a));
        sampled[a] = no_signaling_probe(resource, angles[a], c.trials, rng);
        r.rows.push_back(probe_row("sampled", fmt::format("angle_{:.6f}", angles[a]), sampled[a]));
    }
    double worst = 0.0;
    for (int k = 0; k < 3; k++) {
        double sigma = std::hypot(sampled[0].bloch_sigma[k], sampled[1].bloch_sigma[k]);
        worst = std::max(worst, std::abs(sampled[0].bloch[k] - sampled[1].bloch[k]) / sigma);
    }
    r.check("basis_independence", worst < kNoSignalingSigmas,
            fmt::format("largest Bloch-component difference {:.3f} sigma", worst));
}

void verify_bound(const ExperimentConfig& c, Result& r) {
    bool all_tight = true;
    for (int m = 2; m <= kMaxGridBits; m++) {
        double s = std::sin(phi_min(m));
        all_tight = all_tight && s * s < std::exp2(-m);
    }
    r.check("analytic_bound", all_tight, "sin^2(2^{-m/2}) < 2^{-m} for m in [2, 32]");
    const PrecisionSpec spec{c.m, c.mode};
    VerificationReport report;
    if (c.trials == 0) {
        report = truncation_analytic(c.m, 0).full;
    } else {
        Rng rng(c.seed);
        report = verification_experiment(spec, c.trials, rng);
        r.check("binomial_test", report.passed,
                fmt::format("p_hat {:.9f} vs bound {:.9f}, one-sided p-value {:.4g}", report.p_hat, report.bound,
                            report.p_value));
    }
    r.rows.push_back(to_json(report));
    r.reports.push_back(to_json(report));
}

void truncation_sweep(const ExperimentConfig& c, Result& r) {
    const PrecisionSpec spec{c.m, c.mode};
    int n_max = c.n > 0 ? c.n : std::min(kSweepMaxBits, c.m - 2);
    n_max = std::min(n_max, c.m - 2);
    for (int n = 0; n <= n_max; n++) {
        Rng rng = Rng::substream(c.seed, static_cast<std::uint64_t>(n));
        TruncationResult t = truncation_experiment(spec, n, c.trials, rng);
        Json row{{"m", c.m},
                 {"n", n},
                 {"trials", c.trials},
                 {"analytic_full_failure", t.analytic_full_failure},
                 {"analytic_truncated_failure", t.analytic_truncated_failure},
                 {"analytic_ratio", t.analytic_ratio},
                 {"two_pow_n", std::exp2(n)},
                 {"sampled_ratio", c.trials > 0 && std::isfinite(t.failure_ratio) ? Json(t.failure_ratio)
                                                                                  : Json(nullptr)},
                 {"ratio_sigma", c.trials > 0 ? Json(t.ratio_sigma) : Json(nullptr)},
                 {"full_successes", t.full.successes},
                 {"truncated_successes", t.truncated.successes}};
        r.rows.push_back(row);
        r.reports.push_back(to_json(t.full));
        r.reports.push_back(to_json(t.truncated));
        const double expected = static_cast<double>(c.trials) * t.analytic_full_failure;
        if (c.trials > 0 && expected >= kSweepMinExpectedFailures) {
            double z = std::abs(t.failure_ratio - t.analytic_ratio) / t.ratio_sigma;
            r.check(fmt::format("ratio_n{}", n), z <= kSweepSigmas,
                    fmt::format("sampled {:.6g} vs analytic {:.6g} ({:.2f} sigma)", t.failure_ratio,
                                t.analytic_ratio, z));
        }
        r.check(fmt::format("analytic_n{}", n), t.analytic_ratio <= std::exp2(n) * (1.0 + 1e-12),
                fmt::format("analytic ratio {:.6g} vs 2^n = {:.0f}", t.analytic_ratio, std::exp2(n)));
    }
}

void rsp_equatorial(const ExperimentConfig& c, Result& r) {
    Rng state_rng = Rng::substream(c.seed, 0);
    Rng run_rng = Rng::substream(c.seed, 1);
    const std::int64_t extent = equatorial_extent(c.m);
    std::vector<int> outcomes;
    double min_after = 1.0;
    double max_before_corrected = 0.0;
    bool cost_ok = true;
    LedgerSummary summary;
    for (std::uint64_t t = 0; t < c.trials; t++) {
        auto k = static_cast<std::int64_t>(state_rng.uniform_index(static_cast<std::uint64_t>(extent)));
        PureQubit eta = equatorial_state(c.m, k);
        auto resource = EprResource::singlet();
        RunRecord run = rsp_run(eta, c.m, resource, run_rng);
        double before = fidelity(eta, *run.bob_conditional);
        double after = fidelity(eta, *run.bob_final);
        min_after = std::min(min_after, after);
        if (run.message.bits[0] == 1) {
            max_before_corrected = std::max(max_before_corrected, before);
        }
        cost_ok = cost_ok && run.ledger->classical_bits_c == 1;
        outcomes.push_back(run.outcome);
        summary.add(*run.ledger);
        r.rows.push_back(Json{{"run", t},
                              {"k", k},
                              {"outcome", run.outcome},
                              {"message_bit", run.message.bits[0]},
                              {"fidelity_before", before},
                              {"fidelity_after", after},
                              {"c", run.ledger->classical_bits_c}});
        r.records.push_back(to_json(run));
    }
    r.ledger = to_json(summary);
    auto est = estimate(outcomes, 2);
    const std::array<double, 2> half{0.5, 0.5};
    auto fit = consistency_check(est, half, kUniformitySignificance);
    r.reports.push_back(Json{{"test", fit.exact ? "exact_multinomial" : "chi_square"},
                             {"statistic", fit.statistic},
                             {"p_value", fit.p_value},
                             {"accepted", fit.accepted}});
    r.check("branch_probabilities", fit.accepted,
            fmt::format("counts ({}, {}), p-value {:.6g}", est.counts[0], est.counts[1], fit.p_value));
    r.check("final_fidelity", min_after >= 1.0 - kIdentityTol, fmt::format("min fidelity {:.17g}", min_after));
    r.check("scrambled_branch", max_before_corrected <= kIdentityTol,
            fmt::format("max fidelity before sigma_z correction {:.3g}", max_before_corrected));
    r.check("classical_cost", cost_ok, "every run sent 1 bit");
}

void frequency_check(const ExperimentConfig& c, Result& r) {
    const PrecisionSpec spec{c.m, c.mode};
    const double p = 0.25;
    std::vector<double> freqs;
    for (std::size_t b = 0; b < kFrequencyBatches; b++) {
        Rng rng = Rng::substream(c.seed, b);
        PureQubit input = prepare(random_grid_point(spec, rng));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < c.trials; t++) {
            auto resource = EprResource::singlet();
            hits += bell_measure(input, resource, rng).outcome == kPhiPlus;
        }
        double f = static_cast<double>(hits) / static_cast<double>(c.trials);
        freqs.push_back(f);
        r.rows.push_back(Json{{"batch", b},
                              {"count", hits},
                              {"frequency", f},
                              {"density", frequency_density(f, p, c.trials)}});
    }
    double peak = frequency_density(0.5, 0.5, 100);
    r.check("density_peak", std::abs(peak - std::sqrt(100.0 / std::numbers::pi)) <= 1e-5,
            fmt::format("density(0.5, 0.5, 100) = {:.9f}", peak));
    auto poisson_cdf = [&](double f) { return frequency_cdf(f, p, c.trials, DensityForm::Poisson); };
    auto binomial_cdf = [&](double f) { return frequency_cdf(f, p, c.trials, DensityForm::Binomial); };
    double d_poisson = ks_statistic(freqs, poisson_cdf);
    double d_binomial = ks_statistic(freqs, binomial_cdf);
    double critical = ks_critical_value(kKsAlpha, freqs.size());
    r.reports.push_back(Json{{"test", "kolmogorov_smirnov"},
                             {"batches", freqs.size()},
                             {"batch_size", c.trials},
                             {"p", p},
                             {"d_poisson_form", d_poisson},
                             {"d_binomial_form", d_binomial},
                             {"critical", critical}});
    r.check("ks_poisson_form", d_poisson < critical,
            fmt::format("D = {:.4f} (binomial form {:.4f}), critical {:.4f} at alpha {}", d_poisson, d_binomial,
                        critical, kKsAlpha));
}

void ledger_report(const ExperimentConfig& c, Result& r) {
    const PrecisionSpec spec{c.m, c.mode};
    Rng rng = Rng::substream(c.seed, 0);
    const double s_bits = von_neumann_entropy(partial_trace_A(TwoQubitState::singlet()));
    const double qt_bound = classical_cost_bound(s_bits);
    const std::int64_t extent = equatorial_extent(c.m);
    LedgerSummary summary;
    bool ok = true;
    for (std::uint64_t t = 0; t < c.trials; t++) {
        auto qt_pair = EprResource::singlet();
        RunRecord qt = teleport(random_grid_point(spec, rng), qt_pair, rng);
        auto eta = equatorial_state(c.m, static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(extent))));
        auto rsp_pair = EprResource::singlet();
        RunRecord rsp = rsp_run(eta, c.m, rsp_pair, rng);
        for (RunRecord* run : {&qt, &rsp}) {
            run->truncated_bits = c.n;
            run->ledger = account(*run);
            const LedgerRecord& rec = *run->ledger;
            ok = ok && rec.hidden_cost() == c.m - rec.classical_bits_c;
            summary.add(rec);
            r.rows.push_back(Json{{"protocol", to_string(rec.protocol)},
                                 {"c", rec.classical_bits_c},
                                 {"m", rec.prep_bits_m},
                                 {"n", rec.truncated_bits_n},
                                 {"hidden_cost", rec.hidden_cost()},
                                 {"epr_pairs", rec.epr_pairs_consumed},
                                 {"verified_bits", rec.verified_bits}});
            r.records.push_back(to_json(*run));
        }
        ok = ok && qt.ledger->classical_bits_c == static_cast<int>(std::lround(qt_bound)) &&
             rsp.ledger->classical_bits_c == 1;
    }
    r.ledger = to_json(summary);
    for (Protocol proto : {Protocol::QT, Protocol::RSP}) {
        int cbits = classical_bits_for(proto);
        r.reports.push_back(Json{{"protocol", to_string(proto)},
                                 {"c", cbits},
                                 {"m", c.m},
                                 {"epr_bits", c.m},
                                 {"epr_bits_if_m_minus_c", c.m - cbits},
                                 {"epr_bits_if_m_plus_c", c.m + cbits},
                                 {"hidden_cost", c.m - cbits},
                                 {"degenerate", c.m == cbits}});
    }
    r.reports.push_back(Json{{"cv_cells", 10}, {"m", c.m}, {"cv_prep_bits", cv_prep_info(CvPhaseSpace{10.0}, c.m)}});
    r.check("ledger_balances", ok,
            fmt::format("QT c = 2 S(I/2) = {:.0f}, RSP c = 1, hidden = m - c for every run", qt_bound));
}

void resolution_table(const ExperimentConfig& c, Result& r) {
    std::set<int> ms{8, 16, 24, 32, c.m};
    bool constants_ok = true;
    for (int m : ms) {
        auto res = resolution(m);
        PrecisionSpec real{m, GridMode::RealRotation};
        Json general = m % 2 == 0 ? Json(grid_cardinality({m, GridMode::General})) : Json(nullptr);
        r.rows.push_back(Json{{"m", m},
                              {"phi_min", res.phi_min},
                              {"sphere_size", res.sphere_size},
                              {"overlap_bound", res.overlap_bound},
                              {"prep_info_bits", prep_info(2, m)},
                              {"real_rotation_points", grid_cardinality(real)},
                              {"general_points", general}});
        if (m == 16) {
            constants_ok = fmt::format("{:.1e}", res.sphere_size) == "4.8e-05" && res.phi_min == 0.00390625;
        }
    }
    r.check("resolution_constants", constants_ok, "m = 16: sphere size 4.8e-05 rad to 2 s.f., phi_min = 2^-8");
}

}  // namespace

const char* to_string(Experiment e) {
    for (const auto& [value, name] : experiment_names()) {
        if (value == e) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
    for (const auto& [value, n] : experiment_names()) {
        if (name == n) {
            return value;
        }
    }
    return std::nullopt;
}

std::vector<Experiment> all_experiments() {
    std::vector<Experiment> out;
    for (const auto& entry : experiment_names()) {
        out.push_back(entry.first);
    }
    return out;
}

const char* describe(Experiment e) {
    switch (e) {
        case Experiment::TeleportIdentity:
            return "random_grid_point -> prepare -> bell_branches -> qt_correct -> fidelity; teleport -> account";
        case Experiment::OutcomeUniformity:
            return "prepare -> bell_measure (trials) -> estimate -> consistency_test vs uniform 1/4";
        case Experiment::NoSignaling:
            return "no_signaling_probe (analytic, 100 random bases; sampled, angles 0 and pi/2)";
        case Experiment::VerifyBound:
            return "teleport -> verification_op (adjacent grid point) -> measure_verify -> binomial test vs "
                   "success_bound";
        case Experiment::TruncationSweep:
            return "truncation_experiment for n = 0..min(12, m-2) (or ..n); failure ratio vs 2^n";
        case Experiment::RspEquatorial:
            return "equatorial_state -> rsp_run -> fidelity; estimate -> consistency_test vs (1/2, 1/2)";
        case Experiment::FrequencyCheck:
            return "bell_measure batches of `trials` -> frequency -> KS against frequency_density";
        case Experiment::LedgerReport:
            return "teleport + rsp_run -> account -> ledger rows; classical_cost_bound(von_neumann_entropy)";
        case Experiment::ResolutionTable:
            return "resolution + prep_info + grid_cardinality for m in {8, 16, 24, 32, m}";
    }
    return "";
}

ConfigResult validate_config(const std::map<std::string, std::string>& raw) {
    static const std::set<std::string> known{"experiment", "m", "n", "trials", "seed", "mode", "format", "out",
                                             "threads"};
    ConfigResult result;
    ExperimentConfig cfg;
    auto& errors = result.errors;
    for (const auto& [key, value] : raw) {
        if (!known.contains(key)) {
            errors.push_back("unknown setting '" + key + "'");
        }
    }
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };

    if (const auto* v = get("experiment")) {
        if (auto e = parse_experiment(*v)) {
            cfg.experiment = *e;
        } else {
            errors.push_back("unknown experiment '" + *v + "'");
        }
    } else {
        errors.push_back("missing experiment");
    }
    bool m_ok = true;
    if (const auto* v = get("m")) {
        auto m = parse_integer<int>(*v);
        if (!m) {
            errors.push_back("m: '" + *v + "' is not an integer");
            m_ok = false;
        } else if (*m < 2 || *m > kMaxGridBits) {
            errors.push_back(fmt::format("m: {} outside [2, {}]", *m, kMaxGridBits));
            m_ok = false;
        } else {
            cfg.m = *m;
        }
    }
    if (const auto* v = get("n")) {
        auto n = parse_integer<int>(*v);
        if (!n) {
            errors.push_back("n: '" + *v + "' is not an integer");
        } else if (*n < 0) {
            errors.push_back(fmt::format("n: {} is negative", *n));
        } else {
            cfg.n = *n;
            if (m_ok && *n >= cfg.m) {
                errors.push_back(fmt::format("n: truncating {} bits exceeds precision m = {}", *n, cfg.m));
            } else if (m_ok && *n > 0 && cfg.m - *n < 2) {
                errors.push_back(fmt::format("n: m - n = {} leaves fewer than 2 bits", cfg.m - *n));
            }
        }
    }
    if (const auto* v = get("trials")) {
        if (!v->empty() && v->front() == '-') {
            errors.push_back("trials: '" + *v + "' is negative");
        } else if (auto t = parse_integer<std::uint64_t>(*v)) {
            cfg.trials = *t;
        } else {
            errors.push_back("trials: '" + *v + "' is not an integer");
        }
    }
    if (const auto* v = get("seed")) {
        if (auto s = parse_integer<std::uint64_t>(*v)) {
            cfg.seed = *s;
        } else {
            errors.push_back("seed: '" + *v + "' is not a non-negative integer");
        }
    }
    if (const auto* v = get("threads")) {
        if (auto t = parse_integer<unsigned>(*v)) {
            cfg.threads = *t;
        } else {
            errors.push_back("threads: '" + *v + "' is not a non-negative integer");
        }
    }
    if (const auto* v = get("mode")) {
        std::string lower = *v;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (lower == "realrotation" || lower == "real") {
            cfg.mode = GridMode::RealRotation;
        } else if (lower == "general") {
            cfg.mode = GridMode::General;
        } else {
            errors.push_back("mode: '" + *v + "' is not RealRotation or General");
        }
    }
    if (const auto* v = get("format")) {
        if (*v == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (*v == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            errors.push_back("format: '" + *v + "' is not csv or json");
        }
    }
    if (const auto* v = get("out")) {
        cfg.output_path = *v;
    }

    if (m_ok && cfg.mode == GridMode::General && cfg.m % 2 != 0) {
        errors.push_back(fmt::format("mode: General grid needs even m, got {}", cfg.m));
    }
    if (cfg.mode == GridMode::General && cfg.n % 2 != 0) {
        errors.push_back(fmt::format("n: General grid drops bits in real/imaginary pairs, got odd n = {}", cfg.n));
    }
    const bool verification =
        cfg.experiment == Experiment::VerifyBound || cfg.experiment == Experiment::TruncationSweep;
    if (verification && cfg.mode == GridMode::General) {
        errors.push_back("mode: verification experiments run on the RealRotation grid");
    }
    const bool needs_trials = cfg.experiment == Experiment::TeleportIdentity ||
                              cfg.experiment == Experiment::OutcomeUniformity ||
                              cfg.experiment == Experiment::RspEquatorial ||
                              cfg.experiment == Experiment::FrequencyCheck || cfg.experiment == Experiment::LedgerReport;
    if (needs_trials && cfg.trials == 0 && get("experiment") != nullptr) {
        errors.push_back(std::string("trials: ") + to_string(cfg.experiment) + " needs at least one trial");
    }

    if (errors.empty()) {
        result.config = cfg;
    }
    return result;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    Result r;
    switch (config.experiment) {
        case Experiment::TeleportIdentity:
            teleport_identity(config, r);
            break;
        case Experiment::OutcomeUniformity:
            outcome_uniformity(config, r);
            break;
        case Experiment::NoSignaling:
            no_signaling(config, r);
            break;
        case Experiment::VerifyBound:
            verify_bound(config, r);
            break;
        case Experiment::TruncationSweep:
            truncation_sweep(config, r);
            break;
        case Experiment::RspEquatorial:
            rsp_equatorial(config, r);
            break;
        case Experiment::FrequencyCheck:
            frequency_check(config, r);
            break;
        case Experiment::LedgerReport:
            ledger_report(config, r);
            break;
        case Experiment::ResolutionTable:
            resolution_table(config, r);
            break;
    }
    ExperimentOutput out;
    out.content = config.format == OutputFormat::Csv ? render_csv(r.rows) : render_json(config, r);
    for (const auto& chk : r.checks) {
        out.checks_passed = out.checks_passed && chk.passed;
        out.check_lines.push_back((chk.passed ? "PASS " : "FAIL ") + chk.name + ": " + chk.detail);
    }
    return out;
}

int run(const ExperimentConfig& config) {
    ExperimentOutput out;
    try {
        out = run_experiment(config);
    } catch (const std::exception& e) {
        std::cerr << "telecost: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string path = config.output_path;
    if (path.empty()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            path = (std::filesystem::path(dir) /
                    (std::string(to_string(config.experiment)) + (config.format == OutputFormat::Csv ? ".csv" : ".json")))
                       .string();
        }
    }
    if (path.empty()) {
        std::cout << out.content;
    } else {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        file << out.content;
        file.close();
        if (!file) {
            std::cerr << "telecost: cannot write " << path << "\n";
            return kExitIo;
        }
    }
    for (const auto& line : out.check_lines) {
        std::cerr << line << "\n";
    }
    return out.checks_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace telecost
