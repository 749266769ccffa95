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

#include "telecost/stats.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <limits>
#include <numeric>

#include "telecost/errors.h"

namespace telecost {

namespace {

constexpr double kMinExpected = 5.0;
constexpr double kMaxCompositions = 2e6;

double variance_numerator(double p, DensityForm form) { return form == DensityForm::Poisson ? p : p * (1.0 - p); }

void check_density_args(double p, std::uint64_t n) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError(fmt::format("frequency_density: p = {} outside (0, 1)", p));
    }
    if (n < 1) {
        throw ValidationError("frequency_density: N must be at least 1");
    }
}

double log_choose_count(std::uint64_t n, std::size_t k) {
    // log C(n + k - 1, k - 1)
    return std::lgamma(static_cast<double>(n + k)) - std::lgamma(static_cast<double>(n + 1)) -
           std::lgamma(static_cast<double>(k));
}

double log_multinomial(const std::vector<std::uint64_t>& x, const std::vector<double>& p) {
    double n = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); i++) {
        auto xi = static_cast<double>(x[i]);
        n += xi;
        acc -= std::lgamma(xi + 1.0);
        if (x[i] > 0) {
            acc += xi * std::log(p[i]);
        }
    }
    return acc + std::lgamma(n + 1.0);
}

// Sum of P(x) over all count vectors no more likely than the observed one.
double exact_multinomial_p_value(const std::vector<std::uint64_t>& observed, const std::vector<double>& p) {
    std::uint64_t n = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
    const double log_obs = log_multinomial(observed, p);
    const double threshold = log_obs + 1e-7;
    std::vector<std::uint64_t> x(observed.size(), 0);
    double total = 0.0;
    std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t i, std::uint64_t left) {
        if (i + 1 == x.size()) {
            x[i] = left;
            double lp = log_multinomial(x, p);
            if (lp <= threshold) {
                total += std::exp(lp);
            }
            return;
        }
        for (std::uint64_t v = 0; v <= left; v++) {
            x[i] = v;
            walk(i + 1, left - v);
        }
    };
    walk(0, n);
    return std::min(1.0, total);
}

ConsistencyResult chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& p,
                             double significance) {
    std::uint64_t n = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
    ConsistencyResult r;
    for (std::size_t i = 0; i < observed.size(); i++) {
        double e = p[i] * static_cast<double>(n);
        double d = static_cast<double>(observed[i]) - e;
        r.statistic += d * d / e;
    }
    r.dof = static_cast<int>(observed.size()) - 1;
    if (r.dof < 1) {
        r.p_value = 1.0;
    } else {
        boost::math::chi_squared_distribution<double> dist(r.dof);
        r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    }
    r.accepted = r.p_value >= significance;
    return r;
}

}  // namespace

FrequencyEstimate estimate_from_counts(std::vector<std::uint64_t> counts) {
    FrequencyEstimate est;
    est.n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (est.n == 0) {
        throw ValidationError("estimate: no outcomes");
    }
    est.counts = std::move(counts);
    const auto n = static_cast<double>(est.n);
    for (auto c : est.counts) {
        double f = static_cast<double>(c) / n;
        est.f.push_back(f);
        est.sigma.push_back(std::sqrt(f * (1.0 - f) / n));
    }
    return est;
}

FrequencyEstimate estimate(std::span<const int> outcomes, int k) {
    if (outcomes.empty()) {
        throw ValidationError("estimate: no outcomes");
    }
    if (k < 1) {
        throw ValidationError("estimate: need at least one category");
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(k), 0);
    for (int o : outcomes) {
        if (o < 0 || o >= k) {
            throw ValidationError(fmt::format("estimate: outcome {} outside [0, {})", o, k));
        }
        counts[static_cast<std::size_t>(o)]++;
    }
    return estimate_from_counts(std::move(counts));
}

double frequency_density(double f, double p, std::uint64_t n, DensityForm form) {
    check_density_args(p, n);
    const auto N = static_cast<double>(n);
    const double v = variance_numerator(p, form);
    return std::sqrt(N / (2.0 * std::numbers::pi * v)) * std::exp(-0.5 * N * (f - p) * (f - p) / v);
}

double frequency_cdf(double f, double p, std::uint64_t n, DensityForm form) {
    check_density_args(p, n);
    const double sd = std::sqrt(variance_numerator(p, form) / static_cast<double>(n));
    return 0.5 * std::erfc(-(f - p) / (sd * std::numbers::sqrt2));
}

ConsistencyResult consistency_check(const FrequencyEstimate& est, std::span<const double> claimed,
                                    double significance) {
    if (claimed.size() != est.counts.size()) {
        throw ValidationError("consistency_test: claimed distribution has the wrong number of categories");
    }
    double total = 0.0;
    for (double p : claimed) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("consistency_test: claimed probability outside [0, 1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("consistency_test: claimed probabilities do not sum to 1");
    }

    std::vector<std::uint64_t> observed;
    std::vector<double> p;
    for (std::size_t i = 0; i < claimed.size(); i++) {
        if (claimed[i] == 0.0) {
            if (est.counts[i] > 0) {
                return {false, std::numeric_limits<double>::infinity(), 0.0, 0, true};
            }
            continue;
        }
        observed.push_back(est.counts[i]);
        p.push_back(claimed[i]);
    }
    if (observed.size() <= 1) {
        return {true, 0.0, 1.0, 0, true};
    }

    const auto n = static_cast<double>(est.n);
    bool small = std::any_of(p.begin(), p.end(), [&](double q) { return q * n < kMinExpected; });
    if (!small) {
        return chi_square(observed, p, significance);
    }
    if (log_choose_count(est.n, observed.size()) <= std::log(kMaxCompositions)) {
        ConsistencyResult r;
        r.exact = true;
        r.p_value = exact_multinomial_p_value(observed, p);
        r.statistic = -log_multinomial(observed, p);
        r.dof = static_cast<int>(observed.size()) - 1;
        r.accepted = r.p_value >= significance;
        return r;
    }
    // Pool cells in order of expectation into groups that each reach the
    // threshold; a short remainder joins the last group.
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    std::vector<std::uint64_t> pooled_obs;
    std::vector<double> pooled_p;
    std::uint64_t acc_obs = 0;
    double acc_p = 0.0;
    for (std::size_t idx : order) {
        acc_obs += observed[idx];
        acc_p += p[idx];
        if (acc_p * n >= kMinExpected) {
            pooled_obs.push_back(acc_obs);
            pooled_p.push_back(acc_p);
            acc_obs = 0;
            acc_p = 0.0;
        }
    }
    if (acc_p > 0.0 || acc_obs > 0) {
        if (pooled_p.empty()) {
            pooled_obs.push_back(0);
            pooled_p.push_back(0.0);
        }
        pooled_obs.back() += acc_obs;
        pooled_p.back() += acc_p;
    }
    if (pooled_p.size() <= 1) {
        return {true, 0.0, 1.0, 0, false};
    }
    return chi_square(pooled_obs, pooled_p, significance);
}

std::uint64_t required_sample_size(int m, double significance, double power) {
    if (m < 2 || m > 30) {
        throw ValidationError(fmt::format("required_sample_size: m = {} outside [2, 30]", m));
    }
    if (!(significance > 0.0 && significance <= 1.0)) {
        throw ValidationError("required_sample_size: significance outside (0, 1]");
    }
    if (!(power >= 0.5 && power < 1.0)) {
        throw ValidationError("required_sample_size: power outside [0.5, 1)");
    }
    boost::math::normal_distribution<double> z;
    double z_alpha = boost::math::quantile(z, 1.0 - 0.5 * significance);
    double z_beta = boost::math::quantile(z, power);
    const double delta = std::exp2(-m);
    const double p1 = 0.5;
    const double p2 = 0.5 + delta;
    double n = (z_alpha + z_beta) * (z_alpha + z_beta) * (p1 * (1 - p1) + p2 * (1 - p2)) / (delta * delta);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw ValidationError("ks_statistic: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); i++) {
        double F = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(double alpha, std::size_t n) {
    const double root = std::sqrt(static_cast<double>(n));
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / (root + 0.12 + 0.11 / root);
}

double ks_p_value(double d, std::size_t n) {
    const double root = std::sqrt(static_cast<double>(n));
    const double lambda = (root + 0.12 + 0.11 / root) * d;
    if (lambda < 0.2) {
        return 1.0;
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; k++) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) {
            break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

std::string estimate_csv_header() { return "category,count,frequency,sigma"; }

std::vector<std::string> estimate_csv_rows(const FrequencyEstimate& est) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < est.counts.size(); i++) {
        rows.push_back(fmt::format("{},{},{:.9f},{:.9f}", i, est.counts[i], est.f[i], est.sigma[i]));
    }
    return rows;
}

}  // namespace telecost
