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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "telecost/cli.h"

namespace {

std::string experiment_help() {
    std::string text = "Experiments:\n";
    for (auto e : telecost::all_experiments()) {
        text += "  " + std::string(telecost::to_string(e)) + "\n      " + telecost::describe(e) + "\n";
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation cost experiments on a finite-precision state grid"};
    app.footer(experiment_help());

    std::map<std::string, std::string> raw;
    std::string experiment, m, n, trials, seed, mode, format, out, threads;
    app.add_option("-e,--experiment,experiment", experiment, "Experiment to run")->required();
    auto* m_opt = app.add_option("-m,--m", m, "Preparation precision in bits (default 16)");
    auto* n_opt = app.add_option("-n,--n", n, "Bits dropped by truncation (default 0)");
    auto* t_opt = app.add_option("-t,--trials", trials, "Number of trials (default 10000)");
    auto* s_opt = app.add_option("-s,--seed", seed, "RNG seed (default 42)");
    auto* g_opt = app.add_option("--mode", mode, "Grid mode: RealRotation or General");
    auto* f_opt = app.add_option("-f,--format", format, "Output format: csv or json");
    auto* o_opt = app.add_option("-o,--out", out, "Output file (default: $TELECOST_OUTPUT_DIR or stdout)");
    auto* j_opt = app.add_option("-j,--threads", threads, "Worker threads; 0 = all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? telecost::kExitOk : telecost::kExitUsage;
    }

    raw["experiment"] = experiment;
    const std::pair<CLI::Option*, std::pair<const char*, std::string*>> optional[] = {
        {m_opt, {"m", &m}},         {n_opt, {"n", &n}},           {t_opt, {"trials", &trials}},
        {s_opt, {"seed", &seed}},   {g_opt, {"mode", &mode}},     {f_opt, {"format", &format}},
        {o_opt, {"out", &out}},     {j_opt, {"threads", &threads}},
    };
    for (const auto& [opt, entry] : optional) {
        if (opt->count() > 0) {
            raw[entry.first] = *entry.second;
        }
    }

    auto result = telecost::validate_config(raw);
    if (!result.ok()) {
        for (const auto& err : result.errors) {
            std::cerr << "telecost: " << err << "\n";
        }
        return telecost::kExitUsage;
    }
    return telecost::run(*result.config);
}
