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

#ifndef TELECOST_VERIFY_H
#define TELECOST_VERIFY_H

// Verification of a transmitted state by a ±1 measurement.
//
// For a real target α|↑⟩ + β|↓⟩ the verifier measures
//
//     M(θ) = [[cos θ,  sin θ],
//             [sin θ, -cos θ]],   θ = 2 arccos α,
//
// whose +1 eigenvector is the target, and accepts on +1. Equivalently the
// state is rotated by R_y(-θ) and measured with M(0) = σ_z.

#include <cstdint>
#include <string>

#include "telecost/precision.h"
#include "telecost/qmath.h"
#include "telecost/rng.h"

namespace telecost {

struct VerificationOp {
    double theta = 0.0;
    Operator2 matrix;

    /// (cos θ/2, sin θ/2)
    PureQubit plus_eigenvector() const;
};

/// M(2 arccos alpha). Throws ValidationError for alpha outside [0, 1].
VerificationOp verification_op(double alpha);
/// M(theta) for any finite theta.
VerificationOp verification_op_for_angle(double theta);

/// Born probability of the +1 outcome, (1 + ⟨M⟩)/2.
double pass_probability(const PureQubit& state, const VerificationOp& op);

/// Samples M on `state`; returns +1 or -1.
int measure_verify(const PureQubit& state, const VerificationOp& op, Rng& rng);

/// Applies R_y(-theta) and samples σ_z; returns +1 or -1.
int rotate_then_measure(const PureQubit& state, double theta, Rng& rng);

/// 1 - 2^{-(m - n)}. Throws ValidationError unless 0 ≤ n < m.
double success_bound(int m, int n);

struct VerificationReport {
    int m = 0;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double bound = 0.0;
    double p_value = 1.0;
    bool passed = false;
};

/// Default significance of the one-sided binomial test.
inline constexpr double kVerifySignificance = 1e-3;

/// Exact one-sided binomial p-value of `successes` in `trials` under p = bound
/// (probability of this many failures or more).
double binomial_p_value(std::uint64_t trials, std::uint64_t successes, double bound);

/// Builds a report; passed means the data do not reject p ≥ bound at `significance`.
VerificationReport make_report(int m, int n, std::uint64_t trials, std::uint64_t successes,
                               double significance = kVerifySignificance);

/// How far the verifier's setting sits from the prepared state.
enum class MismatchMode {
    /// One resolution step of the verifier's precision: φ_m for full
    /// settings and φ_{m-n} after dropping n bits.
    WorstCase,
    /// Charlie's state is drawn uniformly from the continuum; the verifier
    /// uses its m-bit quantization, or that quantization truncated by n bits.
    UniformAverage,
};

struct TruncationResult {
    VerificationReport full;
    VerificationReport truncated;
    /// (1 - p̂_trunc) / (1 - p̂_full); +inf when the full run saw no failures.
    double failure_ratio = 0.0;
    double analytic_full_failure = 0.0;
    double analytic_truncated_failure = 0.0;
    double analytic_ratio = 0.0;
    /// Binomial standard error of the sampled ratio, propagated from the analytic failure rates.
    double ratio_sigma = 0.0;
};

/// Exact Born failure rates without sampling. WorstCase gives sin²(2^{-m/2})
/// and sin²(2^{-(m-n)/2}); UniformAverage gives the mean of sin² over a
/// uniform displacement in [0, φ/2], the continuum limit. The UniformAverage
/// sampler rounds twice (to m bits, then to m - n), so its truncated failure
/// rate sits above this value by up to the share of one fine half step.
TruncationResult truncation_analytic(int m, int n, MismatchMode mode = MismatchMode::WorstCase);

/// Teleports grid-prepared states and verifies them with full and n-bit
/// truncated settings, `trials` runs each. trials = 0 returns the analytic
/// result. Requires a RealRotation spec.
TruncationResult truncation_experiment(const PrecisionSpec& spec, int n, std::uint64_t trials, Rng& rng,
                                       MismatchMode mode = MismatchMode::WorstCase);

/// Full-precision verification of teleported states with a worst-case
/// adjacent-grid mismatch.
VerificationReport verification_experiment(const PrecisionSpec& spec, std::uint64_t trials, Rng& rng);

/// CSV layout: m,n,trials,successes,p_hat,bound,passed
std::string report_csv_header();
std::string report_csv_row(const VerificationReport& r);

}  // namespace telecost

#endif
