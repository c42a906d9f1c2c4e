#include "tracegraph/metrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "tracegraph/core/errors.hpp"

namespace tracegraph::metrics {

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

PermutationTestResult permutation_test(std::span<const double> samples_a, std::span<const double> samples_b,
                                       Statistic statistic, std::size_t n, std::uint64_t seed) {
    if (samples_a.empty() || samples_b.empty()) throw std::invalid_argument("permutation test needs two non-empty samples");
    if (n < 1) throw std::invalid_argument("permutation test needs at least one permutation");
    (void)statistic;  // MeanDiff is the only statistic

    PermutationTestResult result;
    result.n_permutations = n;
    result.seed = seed;
    result.observed_statistic = mean(samples_a) - mean(samples_b);
    const double observed = std::abs(result.observed_statistic);

    // Pool in sorted order and always take the smaller group first, so the
    // outcome does not depend on which sample was passed as `a`.
    std::vector<double> pooled(samples_a.begin(), samples_a.end());
    pooled.insert(pooled.end(), samples_b.begin(), samples_b.end());
    std::sort(pooled.begin(), pooled.end());
    const std::size_t k = std::min(samples_a.size(), samples_b.size());
    const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
    const double tolerance = 1e-12 * std::max(1.0, observed);

    std::mt19937_64 rng(seed);
    std::size_t extreme = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::shuffle(pooled.begin(), pooled.end(), rng);
        double first = std::accumulate(pooled.begin(), pooled.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
        double diff = first / static_cast<double>(k) - (total - first) / static_cast<double>(pooled.size() - k);
        if (std::abs(diff) >= observed - tolerance) ++extreme;
    }
    result.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + n);
    return result;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson_r: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson_r: need at least two points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("pearson_r: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double ks_uniform_statistic(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("KS statistic of empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double u = std::clamp(samples[i], 0.0, 1.0);
        d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    // c(alpha) = sqrt(-ln(alpha / 2) / 2)
    double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    return c / std::sqrt(static_cast<double>(n));
}

SplitHalfResult split_half_problem_correlation(std::span<const Trial> trials, std::size_t group_size,
                                               std::size_t per_stimulus_group, std::size_t n_splits,
                                               std::uint64_t seed) {
    if (per_stimulus_group == 0) throw std::invalid_argument("per_stimulus_group must be positive");
    std::map<std::string, std::set<std::string>> participants_by_group;
    for (const auto& t : trials) participants_by_group[t.stimulus_group].insert(t.participant_id);
    if (participants_by_group.empty()) throw InsufficientData("no trials");
    if (group_size != per_stimulus_group * participants_by_group.size()) {
        throw std::invalid_argument("group_size must equal per_stimulus_group times the number of stimulus groups (" +
                                    std::to_string(participants_by_group.size()) + ")");
    }
    for (const auto& [group, members] : participants_by_group) {
        if (members.size() < 2 * per_stimulus_group) {
            throw InsufficientData("stimulus group '" + group + "' has " + std::to_string(members.size()) +
                                   " participants, need " + std::to_string(2 * per_stimulus_group));
        }
    }

    std::mt19937_64 rng(seed);
    SplitHalfResult result;
    for (std::size_t split = 0; split < n_splits; ++split) {
        std::set<std::string> half_a;
        std::set<std::string> half_b;
        for (const auto& [group, members] : participants_by_group) {
            std::vector<std::string> pool(members.begin(), members.end());
            std::shuffle(pool.begin(), pool.end(), rng);
            half_a.insert(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(per_stimulus_group));
            half_b.insert(pool.begin() + static_cast<std::ptrdiff_t>(per_stimulus_group),
                          pool.begin() + static_cast<std::ptrdiff_t>(2 * per_stimulus_group));
        }
        result.splits.push_back(SplitHalf{{half_a.begin(), half_a.end()}, {half_b.begin(), half_b.end()}});
        // problem -> (correct, total) per half
        std::map<std::string, std::pair<double, double>> acc_a;
        std::map<std::string, std::pair<double, double>> acc_b;
        for (const auto& t : trials) {
            auto* target = half_a.count(t.participant_id) ? &acc_a : half_b.count(t.participant_id) ? &acc_b : nullptr;
            if (!target) continue;
            auto& cell = (*target)[problem_key(t.problem)];
            cell.first += t.correct ? 1.0 : 0.0;
            cell.second += 1.0;
        }
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto& [problem, a] : acc_a) {
            auto it = acc_b.find(problem);
            if (it == acc_b.end()) continue;
            xs.push_back(a.first / a.second);
            ys.push_back(it->second.first / it->second.second);
        }
        try {
            result.correlations.push_back(pearson_r(xs, ys));
        } catch (const DegenerateInput&) {
            ++result.skipped_splits;
        } catch (const std::invalid_argument&) {
            ++result.skipped_splits;
        }
    }
    return result;
}

}  // namespace tracegraph::metrics
