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

#include "telecost/verify.h"

#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "telecost/errors.h"
#include "telecost/protocol.h"

namespace telecost {

namespace {

int sample_pm(double p_plus, Rng& rng) { return rng.uniform01() < p_plus ? +1 : -1; }

struct PassCounts {
    std::uint64_t full = 0;
    std::uint64_t truncated = 0;

    PassCounts& operator+=(const PassCounts& o) {
        full += o.full;
        truncated += o.truncated;
        return *this;
    }
};

// Teleports `input` over a fresh pair and verifies Bob's output.
bool teleport_and_verify(const PureQubit& input, const VerificationOp& op, Rng& rng) {
    auto pair = EprResource::singlet();
    auto measured = bell_measure(input, pair, rng);
    auto out = qt_correct(measured.bob_conditional, encode_bell_outcome(measured.outcome));
    return measure_verify(out, op, rng) == +1;
}

}  // namespace

PureQubit VerificationOp::plus_eigenvector() const {
    return {Complex{std::cos(0.5 * theta)}, Complex{std::sin(0.5 * theta)}};
}

VerificationOp verification_op(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError(fmt::format("verification_op: alpha = {} outside [0, 1]", alpha));
    }
    return verification_op_for_angle(2.0 * std::acos(alpha));
}

VerificationOp verification_op_for_angle(double theta) {
    if (!std::isfinite(theta)) {
        throw ValidationError("verification_op_for_angle: non-finite angle");
    }
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {theta, Operator2::observable(Matrix2{{c, s, s, -c}})};
}

double pass_probability(const PureQubit& state, const VerificationOp& op) {
    validate(state);
    return std::clamp(0.5 * (1.0 + expectation(op.matrix, state)), 0.0, 1.0);
}

int measure_verify(const PureQubit& state, const VerificationOp& op, Rng& rng) {
    return sample_pm(pass_probability(state, op), rng);
}

int rotate_then_measure(const PureQubit& state, double theta, Rng& rng) {
    PureQubit aligned = apply(rotation_y(-theta), state);
    return sample_pm(std::norm(aligned.a0), rng);
}

double success_bound(int m, int n) {
    if (n < 0 || n >= m) {
        throw ValidationError(fmt::format("success_bound: need 0 <= n < m, got m = {}, n = {}", m, n));
    }
    return 1.0 - std::exp2(-(m - n));
}

double binomial_p_value(std::uint64_t trials, std::uint64_t successes, double bound) {
    if (successes > trials) {
        throw ValidationError("binomial_p_value: more successes than trials");
    }
    std::uint64_t failures = trials - successes;
    if (failures == 0 || trials == 0) {
        return 1.0;
    }
    boost::math::binomial_distribution<double> dist(static_cast<double>(trials), 1.0 - bound);
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(failures - 1)));
}

VerificationReport make_report(int m, int n, std::uint64_t trials, std::uint64_t successes, double significance) {
    VerificationReport r;
    r.m = m;
    r.n = n;
    r.trials = trials;
    r.successes = successes;
    r.bound = success_bound(m, n);
    r.p_hat = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
    r.p_value = binomial_p_value(trials, successes, r.bound);
    r.passed = trials > 0 && r.p_value >= significance;
    return r;
}

TruncationResult truncation_analytic(int m, int n, MismatchMode mode) {
    success_bound(m, n);
    auto failure = [mode](double phi) {
        if (mode == MismatchMode::WorstCase) {
            double s = std::sin(phi);
            return s * s;
        }
        // mean of sin²(u) for u uniform on [0, phi/2]
        return 0.5 - std::sin(phi) / (2.0 * phi);
    };
    TruncationResult r;
    r.analytic_full_failure = failure(phi_min(m));
    r.analytic_truncated_failure = failure(phi_min(m - n));
    r.analytic_ratio = r.analytic_truncated_failure / r.analytic_full_failure;
    r.failure_ratio = r.analytic_ratio;
    r.full = {m, 0, 0, 0, 1.0 - r.analytic_full_failure, success_bound(m, 0), 1.0,
              1.0 - r.analytic_full_failure >= success_bound(m, 0)};
    r.truncated = {m, n, 0, 0, 1.0 - r.analytic_truncated_failure, success_bound(m, n), 1.0,
                   1.0 - r.analytic_truncated_failure >= success_bound(m, n)};
    return r;
}

TruncationResult truncation_experiment(const PrecisionSpec& spec, int n, std::uint64_t trials, Rng& rng,
                                       MismatchMode mode) {
    validate(spec);
    if (spec.mode != GridMode::RealRotation) {
        throw DomainError("truncation_experiment: verification runs on the RealRotation grid");
    }
    TruncationResult result = truncation_analytic(spec.m, n, mode);
    if (trials == 0) {
        return result;
    }
    if (n > 0) {
        // Rejects coarse grids below 2 bits before any sampling.
        validate(PrecisionSpec{spec.m - n, spec.mode});
    }

    const double fine_step = phi_min(spec.m);
    const double coarse_step = phi_min(spec.m - n);
    auto counts = run_trial_blocks<PassCounts>(
        trials, rng.next_u64(), [&](Rng& r, std::uint64_t begin, std::uint64_t end) {
            PassCounts c;
            for (std::uint64_t t = begin; t < end; t++) {
                if (mode == MismatchMode::WorstCase) {
                    GridPoint g = random_grid_point(spec, r);
                    double psi = half_angle(g);
                    PureQubit input = prepare(g);
                    c.full += teleport_and_verify(input, verification_op_for_angle(2.0 * (psi + fine_step)), r);
                    c.truncated +=
                        teleport_and_verify(input, verification_op_for_angle(2.0 * (psi + coarse_step)), r);
                } else {
                    double psi = std::numbers::pi * r.uniform01();
                    PureQubit input{Complex{std::cos(psi)}, Complex{std::sin(psi)}};
                    GridPoint fine = quantize(input, spec);
                    GridPoint coarse = truncate(fine, n);
                    c.full += teleport_and_verify(input, verification_op_for_angle(2.0 * half_angle(fine)), r);
                    c.truncated +=
                        teleport_and_verify(input, verification_op_for_angle(2.0 * half_angle(coarse)), r);
                }
            }
            return c;
        });

    result.full = make_report(spec.m, 0, trials, counts.full);
    result.truncated = make_report(spec.m, n, trials, counts.truncated);
    double q_full = 1.0 - result.full.p_hat;
    double q_trunc = 1.0 - result.truncated.p_hat;
    result.failure_ratio = q_full > 0.0 ? q_trunc / q_full : std::numeric_limits<double>::infinity();
    const auto N = static_cast<double>(trials);
    double qf = result.analytic_full_failure;
    double qt = result.analytic_truncated_failure;
    result.ratio_sigma = result.analytic_ratio * std::sqrt((1.0 - qt) / (N * qt) + (1.0 - qf) / (N * qf));
    return result;
}

VerificationReport verification_experiment(const PrecisionSpec& spec, std::uint64_t trials, Rng& rng) {
    validate(spec);
    if (spec.mode != GridMode::RealRotation) {
        throw DomainError("verification_experiment: verification runs on the RealRotation grid");
    }
    const double step = phi_min(spec.m);
    std::uint64_t passes = run_trial_blocks<std::uint64_t>(
        trials, rng.next_u64(), [&](Rng& r, std::uint64_t begin, std::uint64_t end) {
            std::uint64_t c = 0;
            for (std::uint64_t t = begin; t < end; t++) {
                GridPoint g = random_grid_point(spec, r);
                c += teleport_and_verify(prepare(g), verification_op_for_angle(2.0 * (half_angle(g) + step)), r);
            }
            return c;
        });
    return make_report(spec.m, 0, trials, passes);
}

std::string report_csv_header() { return "m,n,trials,successes,p_hat,bound,passed"; }

std::string report_csv_row(const VerificationReport& r) {
    return fmt::format("{},{},{},{},{:.9f},{:.9f},{}", r.m, r.n, r.trials, r.successes, r.p_hat, r.bound,
                       r.passed ? "true" : "false");
}

}  // namespace telecost
