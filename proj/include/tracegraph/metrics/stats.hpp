#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracegraph/core/trial.hpp"

namespace tracegraph::metrics {

enum class Statistic { MeanDiff };

struct PermutationTestResult {
    double observed_statistic = 0.0;
    double p_value = 1.0;
    std::size_t n_permutations = 0;
    std::uint64_t seed = 0;
};

// Two-sided permutation test on the difference of means. The pooled sample
// is reshuffled n times; p = (1 + #{|permuted| >= |observed|}) / (1 + n).
// Swapping the two samples gives the same p for the same seed.
PermutationTestResult permutation_test(std::span<const double> samples_a, std::span<const double> samples_b,
                                       Statistic statistic, std::size_t n, std::uint64_t seed);

// Pearson product-moment correlation. Throws DegenerateInput when either
// input has zero variance and std::invalid_argument on length mismatch or
// fewer than two points.
double pearson_r(std::span<const double> x, std::span<const double> y);

// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
double ks_uniform_statistic(std::vector<double> samples);

// Asymptotic KS critical value for sample size n at alpha = 0.01 (or 0.05).
double ks_critical_value(std::size_t n, double alpha);

struct SplitHalf {
    std::vector<std::string> group_a;  // participant ids, sorted
    std::vector<std::string> group_b;
};

struct SplitHalfResult {
    std::vector<double> correlations;  // one per usable split
    std::size_t skipped_splits = 0;    // splits with zero variance in either half
    std::vector<SplitHalf> splits;     // every drawn split, usable or not
};

// Repeatedly draws two disjoint participant groups, each with
// `per_stimulus_group` participants from every stimulus group
// (group_size must equal per_stimulus_group times the number of stimulus
// groups), and correlates problem-level mean accuracy between the groups.
// Throws InsufficientData when a stimulus group has fewer than
// 2 * per_stimulus_group participants.
SplitHalfResult split_half_problem_correlation(std::span<const Trial> trials, std::size_t group_size,
                                               std::size_t per_stimulus_group, std::size_t n_splits,
                                               std::uint64_t seed);

double mean(std::span<const double> values);

}  // namespace tracegraph::metrics
