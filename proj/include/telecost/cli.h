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

#ifndef TELECOST_CLI_H
#define TELECOST_CLI_H

// Experiment configuration and runner behind the command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "telecost/precision.h"

namespace telecost {

enum class Experiment {
    TeleportIdentity,
    OutcomeUniformity,
    NoSignaling,
    VerifyBound,
    TruncationSweep,
    RspEquatorial,
    FrequencyCheck,
    LedgerReport,
    ResolutionTable,
};

enum class OutputFormat { Csv, Json };

inline constexpr int kSchemaVersion = 1;
/// Environment variable naming the directory for outputs when --out is absent.
inline constexpr const char* kOutputDirEnv = "TELECOST_OUTPUT_DIR";

struct ExperimentConfig {
    Experiment experiment = Experiment::ResolutionTable;
    int m = 16;
    int n = 0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
    GridMode mode = GridMode::RealRotation;
    OutputFormat format = OutputFormat::Csv;
    /// Empty: decided by kOutputDirEnv, else standard output.
    std::string output_path;
    /// Worker threads; 0 = hardware concurrency. Never changes the output.
    unsigned threads = 0;
};

struct ConfigResult {
    std::optional<ExperimentConfig> config;
    /// Every violation found, not just the first.
    std::vector<std::string> errors;

    bool ok() const { return config.has_value(); }
};

/// Parses and validates raw key/value settings. Keys: experiment, m, n,
/// trials, seed, mode, format, out, threads.
ConfigResult validate_config(const std::map<std::string, std::string>& raw);

struct ExperimentOutput {
    std::string content;
    bool checks_passed = true;
    /// "PASS name: detail" / "FAIL name: detail"
    std::vector<std::string> check_lines;
};

/// Runs one experiment and renders it in the configured format. Identical
/// (config, seed) give byte-identical content.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs the experiment and writes the output file (or standard output).
int run(const ExperimentConfig& config);

const char* to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);
/// The module operations each experiment chains together.
const char* describe(Experiment e);
std::vector<Experiment> all_experiments();

}  // namespace telecost

#endif
