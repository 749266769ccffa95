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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "telecost/errors.h"
#include "telecost/protocol.h"
#include "telecost/verify.h"
#include "test_util.h"

namespace telecost {
namespace {

using testing::Gen;

constexpr double kPi = 3.141592653589793;

// P(F ≥ f) for F ~ Binomial(n, q), summed term by term in log space.
double binomial_upper_tail(std::uint64_t n, std::uint64_t f, double q) {
    double total = 0.0;
    for (std::uint64_t k = f; k <= n; k++) {
        double lk = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(q) +
                    (n - k) * std::log1p(-q);
        total += std::exp(lk);
    }
    return std::min(1.0, total);
}

// Composite Simpson rule on [a, b].
template <typename F>
double simpson(F f, double a, double b, int intervals = 2000) {
    double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; i++) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

TEST(VerificationOp, MatrixForm) {
    Gen gen(41);
    for (int i = 0; i < 300; i++) {
        double alpha = gen.uniform(0.0, 1.0);
        auto op = verification_op(alpha);
        double th = 2 * std::acos(alpha);
        EXPECT_NEAR(op.theta, th, 1e-15);
        EXPECT_NEAR(op.matrix.m(0, 0).real(), std::cos(th), 1e-12);
        EXPECT_NEAR(op.matrix.m(0, 1).real(), std::sin(th), 1e-12);
        EXPECT_NEAR(op.matrix.m(1, 0).real(), std::sin(th), 1e-12);
        EXPECT_NEAR(op.matrix.m(1, 1).real(), -std::cos(th), 1e-12);
        EXPECT_TRUE(op.matrix.is_hermitian());
        EXPECT_TRUE(op.matrix.is_unitary());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(testing::to_eigen(op.matrix.m));
        EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-12);
        EXPECT_NEAR(es.eigenvalues()(1), 1.0, 1e-12);
        auto plus = op.plus_eigenvector();
        EXPECT_NEAR(testing::overlap(es.eigenvectors().col(1), testing::to_eigen(plus)), 1.0, 1e-12);
        EXPECT_NEAR(plus.a0.real(), alpha, 1e-12);
    }
    EXPECT_THROW(verification_op(1.5), ValidationError);
    EXPECT_THROW(verification_op(-0.1), ValidationError);
}

TEST(VerificationOp, WorkedAngleExample) {
    const double deg = kPi / 180.0;
    const double alpha = std::cos(22.44405 * deg);
    EXPECT_NEAR(alpha, 0.9242527868130684, 1e-15);
    EXPECT_NEAR(std::sqrt(1 - alpha * alpha), 0.3817810708616612, 1e-15);
    auto op = verification_op(alpha);
    EXPECT_NEAR(op.theta / deg, 44.8881, 1e-9);
    auto target = apply(rotation_y(44.8881 * deg), PureQubit::up());
    EXPECT_GE(fidelity(op.plus_eigenvector(), target), 1.0 - 1e-10);
}

TEST(PassProbability, BornRule) {
    Gen gen(42);
    for (int i = 0; i < 300; i++) {
        auto op = verification_op_for_angle(gen.uniform(-kPi, kPi));
        auto plus = op.plus_eigenvector();
        EXPECT_NEAR(pass_probability(plus, op), 1.0, 1e-12);
        EXPECT_NEAR(pass_probability(orthogonal(plus), op), 0.0, 1e-12);
        auto s = gen.qubit();
        EXPECT_NEAR(pass_probability(s, op), fidelity(s, plus), 1e-12);
        double d = gen.uniform(0.0, 0.1);
        auto moved = apply(rotation_y(2 * d), plus);
        EXPECT_NEAR(1.0 - pass_probability(moved, op), std::pow(std::sin(d), 2), 1e-12);
    }
}

TEST(Measure, DirectAndRotatedAgree) {
    Rng a(43), b(44);
    auto op = verification_op_for_angle(1.1);
    auto state = apply(rotation_y(1.1 + 0.5), PureQubit::up());
    const double p = pass_probability(state, op);
    const int n = 100000;
    int direct = 0, rotated = 0;
    for (int i = 0; i < n; i++) {
        int x = measure_verify(state, op, a);
        int y = rotate_then_measure(state, op.theta, b);
        ASSERT_TRUE(x == 1 || x == -1);
        direct += x == 1;
        rotated += y == 1;
    }
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_LT(std::abs(direct / double(n) - p), 5 * sigma);
    EXPECT_LT(std::abs(rotated / double(n) - p), 5 * sigma);
}

TEST(SuccessBound, Values) {
    EXPECT_DOUBLE_EQ(success_bound(16, 0), 1.0 - std::exp2(-16));
    EXPECT_DOUBLE_EQ(success_bound(16, 8), 1.0 - std::exp2(-8));
    EXPECT_THROW(success_bound(16, 16), ValidationError);
    EXPECT_THROW(success_bound(16, -1), ValidationError);
}

TEST(SuccessBound, WorstCaseFailureBelowBound) {
    for (int m = 2; m <= 32; m++) {
        EXPECT_LT(std::pow(std::sin(std::exp2(-m / 2.0)), 2), std::exp2(-m));
        EXPECT_LT(std::exp2(-m) - std::pow(std::sin(std::exp2(-m / 2.0)), 2), std::exp2(-2 * m) / 3 * 1.0001);
    }
}

TEST(Binomial, PValueMatchesDirectSum) {
    for (std::uint64_t n : {10ull, 100ull, 1000ull}) {
        for (double bound : {0.9, 0.99, 0.999}) {
            for (std::uint64_t s = n > 30 ? n - 30 : 0; s <= n; s++) {
                double want = binomial_upper_tail(n, n - s, 1 - bound);
                EXPECT_NEAR(binomial_p_value(n, s, bound), want, 1e-10 + 1e-9 * want);
            }
        }
    }
    EXPECT_DOUBLE_EQ(binomial_p_value(1000, 1000, 0.99), 1.0);
}

TEST(Binomial, ReportDecision) {
    auto good = make_report(8, 0, 1000000, 996200);
    EXPECT_TRUE(good.passed);
    EXPECT_DOUBLE_EQ(good.p_hat, 0.9962);
    auto bad = make_report(8, 0, 1000000, 995000);
    EXPECT_FALSE(bad.passed);
    EXPECT_LT(bad.p_value, kVerifySignificance);
    auto row = report_csv_row(good);
    EXPECT_EQ(report_csv_header(), "m,n,trials,successes,p_hat,bound,passed");
    EXPECT_NE(row.find("996200"), std::string::npos);
}

TEST(Truncation, AnalyticFrozenValues) {
    auto r = truncation_analytic(16, 8);
    EXPECT_NEAR(r.analytic_ratio, 255.6681406221092, 1e-9);
    EXPECT_NEAR(r.analytic_truncated_failure, 0.0039011663853354738, 1e-16);
    EXPECT_NEAR(truncation_analytic(8, 4).analytic_ratio, 15.689850934043182, 1e-10);
    EXPECT_NEAR(truncation_analytic(16, 2).analytic_ratio / 4, 0.99998474, 1e-8);
    EXPECT_NEAR(truncation_analytic(16, 4).analytic_ratio / 16, 0.99992371, 1e-8);
    EXPECT_NEAR(truncation_analytic(16, 8).analytic_ratio / 256, 0.99870367, 1e-8);
    EXPECT_DOUBLE_EQ(truncation_analytic(16, 0).analytic_ratio, 1.0);
}

TEST(Truncation, RatioApproachesPowerOfTwo) {
    for (int m = 12; m <= 32; m += 2) {
        for (int n = 0; n <= 8; n++) {
            double ratio = truncation_analytic(m, n).analytic_ratio;
            EXPECT_LE(ratio, std::exp2(n) * (1 + 1e-12));
            EXPECT_GE(ratio, std::exp2(n) * (1 - std::exp2(-(m - n)) / 2));
        }
    }
}

TEST(Truncation, UniformAverageQuadrature) {
    for (int m : {8, 16}) {
        for (int n : {0, 2, 4}) {
            auto r = truncation_analytic(m, n, MismatchMode::UniformAverage);
            auto mean_sin2 = [](double half_step) {
                return simpson([](double x) { return std::pow(std::sin(x), 2); }, 0.0, half_step) / half_step;
            };
            EXPECT_NEAR(r.analytic_full_failure, mean_sin2(phi_min(m) / 2), 1e-12);
            EXPECT_NEAR(r.analytic_truncated_failure, mean_sin2(phi_min(m - n) / 2), 1e-12);
        }
    }
}

TEST(Truncation, SampledMatchesAnalytic) {
    Rng rng(45);
    auto r = truncation_experiment({8, GridMode::RealRotation}, 4, 200000, rng);
    EXPECT_EQ(r.full.trials, 200000u);
    EXPECT_LT(std::abs(r.failure_ratio - r.analytic_ratio), 4 * r.ratio_sigma);
    EXPECT_TRUE(r.full.passed);
    EXPECT_TRUE(r.truncated.passed);
    auto analytic = truncation_experiment({8, GridMode::RealRotation}, 4, 0, rng);
    EXPECT_DOUBLE_EQ(analytic.failure_ratio, analytic.analytic_ratio);
    EXPECT_THROW(truncation_experiment({8, GridMode::General}, 2, 10, rng), DomainError);
}

// Expected failure of the uniform-average sampler by midpoint quadrature over
// the continuous half-angle, using the same quantize / truncate mapping.
double uniform_mode_failure(const PrecisionSpec& spec, int n) {
    const int points = 400000;
    double total = 0.0;
    for (int i = 0; i < points; i++) {
        double psi = kPi * (i + 0.5) / points;
        PureQubit s{Complex{std::cos(psi)}, Complex{std::sin(psi)}};
        GridPoint setting = truncate(quantize(s, spec), n);
        total += std::pow(std::sin(fs_angle(s, dequantize(setting))), 2);
    }
    return total / points;
}

TEST(Truncation, UniformAverageSampled) {
    Rng rng(46);
    const PrecisionSpec spec{8, GridMode::RealRotation};
    auto r = truncation_experiment(spec, 4, 200000, rng, MismatchMode::UniformAverage);
    for (auto [q, want] : {std::pair{1.0 - r.full.p_hat, uniform_mode_failure(spec, 0)},
                           std::pair{1.0 - r.truncated.p_hat, uniform_mode_failure(spec, 4)}}) {
        EXPECT_LT(std::abs(q - want), 5 * std::sqrt(want / 200000));
    }
    // The continuum formula ignores the short wrap-around cell and, after
    // truncation, the extra half fine step from rounding twice.
    EXPECT_NEAR(r.analytic_full_failure / uniform_mode_failure(spec, 0), 1.0, 0.01);
    double trunc_ratio = r.analytic_truncated_failure / uniform_mode_failure(spec, 4);
    EXPECT_GT(trunc_ratio, 0.8);
    EXPECT_LT(trunc_ratio, 1.0);
}

TEST(Verification, ExperimentPasses) {
    Rng rng(47);
    auto r = verification_experiment({8, GridMode::RealRotation}, 100000, rng);
    EXPECT_EQ(r.m, 8);
    EXPECT_EQ(r.n, 0);
    EXPECT_TRUE(r.passed);
    EXPECT_DOUBLE_EQ(r.bound, 1 - std::exp2(-8));
    EXPECT_DOUBLE_EQ(r.p_hat, static_cast<double>(r.successes) / 100000.0);
}

}  // namespace
}  // namespace telecost
