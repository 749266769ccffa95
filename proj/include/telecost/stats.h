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

#ifndef TELECOST_STATS_H
#define TELECOST_STATS_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace telecost {

struct FrequencyEstimate {
    std::vector<std::uint64_t> counts;
    std::uint64_t n = 0;
    std::vector<double> f;
    /// sqrt(f (1 - f) / n) per category.
    std::vector<double> sigma;
};

/// Counts and frequencies of outcomes in [0, k). Throws ValidationError on
/// empty input or out-of-range entries.
FrequencyEstimate estimate(std::span<const int> outcomes, int k);
FrequencyEstimate estimate_from_counts(std::vector<std::uint64_t> counts);

/// Variance used by the normal approximation to a frequency.
enum class DensityForm {
    Poisson,  ///< p / N
    Binomial  ///< p (1 - p) / N
};

/// sqrt(N / 2πp) exp[-(N/2)(f - p)² / p] in the Poisson form; the Binomial form
/// swaps p for p(1 - p) in both places. Throws ValidationError unless 0 < p < 1, N ≥ 1.
double frequency_density(double f, double p, std::uint64_t n, DensityForm form = DensityForm::Poisson);

/// CDF of the same normal law.
double frequency_cdf(double f, double p, std::uint64_t n, DensityForm form = DensityForm::Poisson);

struct ConsistencyResult {
    bool accepted = false;
    double statistic = 0.0;
    double p_value = 0.0;
    int dof = 0;
    /// Exact multinomial enumeration was used instead of chi-square.
    bool exact = false;
};

/// Goodness of fit of `est` against `claimed`. Chi-square when every expected
/// count is at least 5; otherwise an exact multinomial test, or chi-square on
/// pooled cells when the enumeration would be too large. A claimed zero with a
/// nonzero count rejects outright.
ConsistencyResult consistency_check(const FrequencyEstimate& est, std::span<const double> claimed,
                                    double significance);
inline bool consistency_test(const FrequencyEstimate& est, std::span<const double> claimed, double significance) {
    return consistency_check(est, claimed, significance).accepted;
}

/// Sample size at which frequency comparison separates adjacent m-bit grid
/// points (outcome probabilities 1/2 and 1/2 + 2^{-m}) with a two-sided test
/// at `significance` and the given power. Throws ValidationError for m
/// outside [2, 30] or significance outside (0, 1].
std::uint64_t required_sample_size(int m, double significance, double power = 0.5);

/// Kolmogorov-Smirnov distance between the sample and a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Critical distance at level alpha (Stephens' small-sample form of the asymptotic law).
double ks_critical_value(double alpha, std::size_t n);
/// Asymptotic p-value of distance d for n samples.
double ks_p_value(double d, std::size_t n);

/// CSV layout: category,count,frequency,sigma
std::string estimate_csv_header();
std::vector<std::string> estimate_csv_rows(const FrequencyEstimate& est);

}  // namespace telecost

#endif
