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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "telecost/cli.h"
#include "telecost/ledger.h"
#include "telecost/precision.h"
#include "telecost/protocol.h"
#include "telecost/rng.h"
#include "telecost/stats.h"
#include "telecost/verify.h"

namespace {

using namespace telecost;

constexpr double kPi = 3.141592653589793;
constexpr double kDeg = kPi / 180.0;

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void require(bool ok, std::string note) {
        passed = passed && ok;
        notes.push_back((ok ? "" : "[x] ") + std::move(note));
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double simpson(F f, double a, double b, int intervals = 20000) {
    double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; i++) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome teleportation_identity() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (auto mode : {GridMode::RealRotation, GridMode::General}) {
        PrecisionSpec spec{16, mode};
        Rng rng = Rng::substream(2026, static_cast<std::uint64_t>(mode));
        double worst = 1.0;
        for (int i = 0; i < 1000; i++) {
            PureQubit input = prepare(random_grid_point(spec, rng));
            auto branches = bell_branches(input, TwoQubitState::singlet());
            for (int k = 0; k < 4; k++) {
                worst = std::min(worst, fidelity(input, qt_correct(branches[k].bob_conditional,
                                                                    encode_bell_outcome(k))));
            }
        }
        o.require(worst >= 1.0 - 1e-10, fmt::format("{}: min fidelity {:.17g}", to_string(mode), worst));
    }
    double secs = seconds_since(t0);
    o.require(secs < 5.0, fmt::format("runtime {:.3f} s < 5 s", secs));
    return o;
}

Outcome resolution_constants() {
    Outcome o;
    auto out = run_experiment(validate_config({{"experiment", "resolution_table"}, {"m", "16"}}).config.value());
    std::istringstream lines(out.content);
    std::string line;
    std::string row16;
    while (std::getline(lines, line)) {
        if (line.rfind("16,", 0) == 0) {
            row16 = line;
        }
    }
    o.require(!row16.empty(), "resolution_table has an m = 16 row");
    std::vector<std::string> cols;
    std::istringstream cells(row16);
    for (std::string c; std::getline(cells, c, ',');) {
        cols.push_back(c);
    }
    if (cols.size() >= 3) {
        double phi = std::stod(cols[1]);
        double sphere = std::stod(cols[2]);
        o.require(std::abs(sphere - std::exp2(-16) * kPi) <= 5e-15, fmt::format("sphere_size {}", cols[2]));
        o.require(fmt::format("{:.1e}", sphere) == "4.8e-05", fmt::format("2 s.f.: {:.1e} rad", sphere));
        o.require(phi == std::exp2(-8) && phi_min(16) == std::exp2(-8), fmt::format("phi_min {} = 2^-8", cols[1]));
    }
    return o;
}

Outcome preparation_information() {
    Outcome o;
    bool exact = true;
    for (std::int64_t d = 2; d <= 64; d++) {
        for (std::int64_t m = 0; m <= 64; m++) {
            exact = exact && prep_info(d, m) == (d - 1) * m;
        }
    }
    o.require(exact && prep_info(2, 16) == 16, "prep_info(D, m) = (D-1)m for D in [2, 64], m in [0, 64]");
    double worst = 0.0;
    for (int m = 2; m <= 16; m += 2) {
        PrecisionSpec spec{m, GridMode::General};
        auto grid = enumerate_grid(spec);
        std::vector<double> p(grid.size(), 1.0 / static_cast<double>(grid.size()));
        double h = preparation_entropy(p);
        worst = std::max(worst, std::abs(h - std::log2(static_cast<double>(grid_cardinality(spec)))));
    }
    o.require(worst <= 1e-9, fmt::format("General ensemble entropy vs log2(cardinality), m = 2..16: {:.2e}", worst));
    return o;
}

Outcome verification_bound() {
    Outcome o;
    bool tight = true;
    for (int m = 2; m <= 32; m++) {
        double s = std::sin(std::exp2(-m / 2.0));
        tight = tight && s * s < std::exp2(-m);
    }
    o.require(tight, "sin^2(2^{-m/2}) < 2^{-m} for m in [2, 32]");
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(4);
    auto r = verification_experiment({8, GridMode::RealRotation}, 1000000, rng);
    double secs = seconds_since(t0);
    o.require(r.passed && r.p_value >= 1e-3 && r.bound == 1 - std::exp2(-8),
              fmt::format("m = 8, 10^6 trials: p_hat {:.6f}, bound {:.6f}, p-value {:.3g}", r.p_hat, r.bound,
                          r.p_value));
    o.require(secs < 30.0, fmt::format("runtime {:.2f} s < 30 s", secs));
    return o;
}

Outcome truncation_factor() {
    Outcome o;
    for (int n : {2, 4, 8}) {
        double ratio = truncation_analytic(16, n).analytic_ratio;
        double rel = std::abs(ratio / std::exp2(n) - 1.0);
        o.require(rel <= 0.005, fmt::format("m = 16, n = {}: ratio {:.6f} vs {}, off {:.4f}%", n, ratio,
                                            std::exp2(n), 100 * rel));
    }
    Rng rng(5);
    auto t = truncation_experiment({8, GridMode::RealRotation}, 4, 1000000, rng);
    double z = std::abs(t.failure_ratio - t.analytic_ratio) / t.ratio_sigma;
    o.require(z <= 3.0, fmt::format("m = 8, n = 4, 10^6 trials: sampled {:.4f} vs analytic {:.4f} ({:.2f} sigma)",
                                    t.failure_ratio, t.analytic_ratio, z));
    return o;
}

Outcome worked_angle() {
    Outcome o;
    auto op = verification_op(std::cos(22.44405 * kDeg));
    PureQubit target = apply(rotation_y(44.8881 * kDeg), PureQubit::up());
    double f = fidelity(op.plus_eigenvector(), target);
    o.require(f >= 1.0 - 1e-10, fmt::format("+1 eigenvector fidelity {:.17g}", f));
    for (auto mode : {GridMode::RealRotation, GridMode::General}) {
        PrecisionSpec spec{16, mode};
        GridPoint g = quantize(target, spec);
        double d = fs_angle(target, dequantize(g));
        bool round_trip = quantize(dequantize(g), spec) == g;
        o.require(round_trip && d <= std::exp2(-8),
                  fmt::format("{} m = 16: displacement {:.3e} rad <= 2^-8, round trip {}", to_string(mode), d,
                              round_trip ? "exact" : "broken"));
    }
    return o;
}

Outcome no_signaling() {
    Outcome o;
    Rng rng(7);
    auto pair = EprResource::singlet();
    double worst = 0.0;
    for (int i = 0; i < 100; i++) {
        auto probe = no_signaling_probe(pair, haar_random_state(rng), 0, rng);
        worst = std::max(worst, probe.bob.m.max_abs_diff(DensityOp::maximally_mixed().m));
    }
    o.require(worst < 1e-12, fmt::format("100 random bases: max deviation from I/2 {:.2e}", worst));
    Rng a = Rng::substream(7, 1), b = Rng::substream(7, 2);
    auto pa = no_signaling_probe(pair, 0.0, 100000, a);
    auto pb = no_signaling_probe(pair, 1.234, 100000, b);
    double z = 0.0;
    for (int k = 0; k < 3; k++) {
        z = std::max(z, std::abs(pa.bloch[k] - pb.bloch[k]) / std::hypot(pa.bloch_sigma[k], pb.bloch_sigma[k]));
    }
    o.require(z < 5.0, fmt::format("N = 10^5 per basis: largest Bloch difference {:.2f} sigma < 5", z));
    return o;
}

Outcome outcome_statistics() {
    Outcome o;
    const int n = 100000;
    Rng rng(8);
    std::vector<int> bell;
    PrecisionSpec spec{16, GridMode::General};
    for (int i = 0; i < n; i++) {
        auto pair = EprResource::singlet();
        bell.push_back(bell_measure(prepare(random_grid_point(spec, rng)), pair, rng).outcome);
    }
    const std::array<double, 4> quarter{0.25, 0.25, 0.25, 0.25};
    auto bell_fit = consistency_check(estimate(bell, 4), quarter, 1e-3);
    o.require(bell_fit.accepted && !bell_fit.exact,
              fmt::format("Bell outcomes: chi-square {:.3f}, p-value {:.3g}", bell_fit.statistic, bell_fit.p_value));

    std::vector<int> rsp;
    double worst = 1.0;
    for (int i = 0; i < n; i++) {
        auto eta = equatorial_state(16, static_cast<std::int64_t>(rng.uniform_index(805)));
        auto pair = EprResource::singlet();
        auto run = rsp_run(eta, 16, pair, rng);
        rsp.push_back(run.outcome);
        worst = std::min(worst, fidelity(eta, *run.bob_final));
    }
    const std::array<double, 2> half{0.5, 0.5};
    auto rsp_fit = consistency_check(estimate(rsp, 2), half, 1e-3);
    o.require(rsp_fit.accepted,
              fmt::format("RSP branches: chi-square {:.3f}, p-value {:.3g}", rsp_fit.statistic, rsp_fit.p_value));
    o.require(worst >= 1.0 - 1e-10, fmt::format("RSP final fidelity min {:.17g}", worst));
    return o;
}

Outcome frequency_formula() {
    Outcome o;
    double peak = frequency_density(0.5, 0.5, 100);
    o.require(std::abs(peak - std::sqrt(100.0 / kPi)) <= 1e-5 && std::abs(peak - 5.64190) <= 1e-5,
              fmt::format("density(0.5, 0.5, 100) = {:.6f}", peak));
    for (double p : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) {
        for (std::uint64_t n : {100u, 1000u, 10000u}) {
            double mass = simpson([&](double f) { return frequency_density(f, p, n); }, 0.0, 1.0);
            if (std::abs(mass - 1.0) > 0.01 || (p == 0.5 && n == 100)) {
                o.require(std::abs(mass - 1.0) <= 0.01, fmt::format("integral over [0, 1], p = {}, N = {}: {:.5f}",
                                                                    p, n, mass));
            }
        }
    }
    auto cfg = validate_config({{"experiment", "frequency_check"}, {"trials", "100000"}, {"seed", "9"}});
    auto out = run_experiment(cfg.config.value());
    for (const auto& line : out.check_lines) {
        if (line.find("ks_") != std::string::npos) {
            o.require(line.rfind("PASS", 0) == 0, "200 batches of N = 10^5: " + line.substr(5));
        }
    }
    return o;
}

Outcome ledger() {
    Outcome o;
    const double s = von_neumann_entropy(partial_trace_A(TwoQubitState::singlet()));
    Rng rng(10);
    bool qt_ok = true, rsp_ok = true, hidden_ok = true;
    for (int i = 0; i < 1000; i++) {
        auto p1 = EprResource::singlet();
        auto qt = teleport(random_grid_point({16, GridMode::General}, rng), p1, rng);
        qt_ok = qt_ok && qt.ledger->classical_bits_c == 2 && qt.ledger->classical_bits_c == classical_cost_bound(s);
        auto p2 = EprResource::singlet();
        auto rsp = rsp_run(equatorial_state(16, i % 805), 16, p2, rng);
        rsp_ok = rsp_ok && rsp.ledger->classical_bits_c == 1;
        hidden_ok = hidden_ok && qt.ledger->hidden_cost() == 14 && rsp.ledger->hidden_cost() == 15;
    }
    o.require(qt_ok, fmt::format("QT: c = 2 = 2 S(I/2), S = {:.12f}", s));
    o.require(rsp_ok, "equatorial RSP: c = 1");
    o.require(hidden_ok, "hidden cost m - c reported (14 for QT, 15 for RSP at m = 16)");
    o.require(cv_prep_info({10.0}, 16) == 144, fmt::format("cv_prep_info(10, 16) = {}", cv_prep_info({10.0}, 16)));
    return o;
}

Outcome determinism() {
    Outcome o;
    auto dir = std::filesystem::temp_directory_path() / "telecost_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    int identical = 0;
    int total = 0;
    std::ostringstream sink;
    auto* saved = std::cerr.rdbuf(sink.rdbuf());
    for (auto e : all_experiments()) {
        for (const char* format : {"csv", "json"}) {
            std::map<std::string, std::string> raw{{"experiment", to_string(e)},
                                                   {"m", "12"},
                                                   {"trials", e == Experiment::FrequencyCheck ? "1000" : "5000"},
                                                   {"seed", "11"},
                                                   {"format", format}};
            std::string names[2];
            for (int rep = 0; rep < 2; rep++) {
                raw["out"] = (dir / fmt::format("{}_{}.{}", to_string(e), rep, format)).string();
                raw["threads"] = rep == 0 ? "1" : "0";
                run(validate_config(raw).config.value());
                names[rep] = raw["out"];
            }
            auto a = slurp(names[0]);
            total++;
            identical += !a.empty() && a == slurp(names[1]);
        }
    }
    std::cerr.rdbuf(saved);
    std::filesystem::remove_all(dir);
    o.require(identical == total, fmt::format("{}/{} experiment outputs byte-identical on re-run", identical, total));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"teleportation identity", teleportation_identity},
        {"resolution constants", resolution_constants},
        {"preparation information", preparation_information},
        {"verification bound", verification_bound},
        {"truncation factor", truncation_factor},
        {"worked verification angle", worked_angle},
        {"no-signaling", no_signaling},
        {"outcome statistics", outcome_statistics},
        {"frequency formula", frequency_formula},
        {"ledger", ledger},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += !o.passed;
        std::string detail;
        for (const auto& n : o.notes) {
            detail += (detail.empty() ? "" : "; ") + n;
        }
        fmt::print("{} criterion {:>2} ({}): {}\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, detail);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
