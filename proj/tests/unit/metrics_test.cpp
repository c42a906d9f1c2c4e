#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <map>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "tracegraph/core/errors.hpp"
#include "tracegraph/metrics/ged.hpp"
#include "tracegraph/metrics/stats.hpp"
#include "tracegraph/validator/validator.hpp"

using namespace tracegraph;
using namespace tracegraph::metrics;

namespace {

SearchGraph graph_of(const std::string& src) {
    auto v = validator::validate(src);
    REQUIRE(v.graph.has_value());
    return *v.graph;
}

const std::string kTwoEdges = "start 3 3 8 8\nexplore 3 * 8 = 24\nexplore 3 + 8 = 11\n";
const std::string kOneEdge = "start 3 3 8 8\nexplore 3 * 8 = 24\n";
const std::string kOther = "start 3 3 8 8\nexplore 3 + 3 = 6\n";

}  // namespace

TEST_CASE("graph edit distance fixtures") {
    auto g1 = graph_of(kTwoEdges);
    auto g2 = graph_of(kOneEdge);
    CHECK(graph_edit_distance(g1, g1) == 0.0);
    CHECK(graph_edit_distance(g1, g2) == 2.0);
    CHECK(testing::oracle_ged(g1, g2) == 2.0);
    CHECK(graph_edit_distance(g2, graph_of(kOther)) == 4.0);
    CHECK(testing::oracle_ged(g2, graph_of(kOther)) == 4.0);
    CHECK_THROWS_AS(graph_edit_distance(g1, graph_of("start 1 2 3 4")), RootMismatch);
}

TEST_CASE("normalized distance") {
    auto g1 = graph_of(kTwoEdges);
    auto g2 = graph_of(kOneEdge);
    CHECK(normalized_ged(g1, g1) == 0.0);
    CHECK(normalized_ged(g1, g2) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(normalized_ged(std::nullopt, g1) == 1.0);
    CHECK(normalized_ged(g1, std::nullopt) == 1.0);
    CHECK(normalized_ged(std::nullopt, std::nullopt) == 1.0);

    // disjoint one-edge graphs: 4 / 3 unclamped
    auto scores = normalized_ged_scores(g2, graph_of(kOther));
    CHECK(scores.raw == 4.0);
    CHECK(scores.normalized == doctest::Approx(4.0 / 3.0));
    CHECK(scores.clamped == 1.0);
    GedConfig raw_cfg;
    raw_cfg.clamp_to_unit = false;
    CHECK(normalized_ged(g2, graph_of(kOther), raw_cfg) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("relabels, parallel edges and subgoals") {
    // 2*2=4 and 2+2=4 connect the same states
    auto a = graph_of("start 2 2 5 7\nexplore 2 * 2 = 4\n");
    auto b = graph_of("start 2 2 5 7\nexplore 2 + 2 = 4\n");
    CHECK(graph_edit_distance(a, b) == 1.0);
    GedConfig costly;
    costly.edge_relabel_cost = 5.0;
    CHECK(graph_edit_distance(a, b, costly) == 2.0);  // delete + insert is cheaper
    CHECK(testing::oracle_ged(a, b, 1, 1, 5) == 2.0);

    auto dup = graph_of("start 2 2 5 7\nexplore 2 * 2 = 4\nreset\nexplore 2 * 2 = 4\n");
    CHECK(graph_edit_distance(a, dup) == 1.0);

    auto sub = graph_of("start 2 2 5 7\nsubgoal {4,6}\n");
    CHECK(graph_edit_distance(graph_of("start 2 2 5 7"), sub) == 3.0);
    CHECK_THROWS_AS(graph_edit_distance(a, b, GedConfig{-1, 1, 1, true}), std::invalid_argument);
}

TEST_CASE("closed form equals exhaustive edit-script search on small graphs") {
    testing::Gen gen(1234);
    const std::vector<game24::Problem> roots{game24::Problem({1, 1, 2, 2}), game24::Problem({2, 2, 2, 3}),
                                             game24::Problem({3, 3, 8, 8})};
    const GedConfig configs[] = {GedConfig{}, GedConfig{2, 1, 1, true}, GedConfig{1, 1, 3, true}, GedConfig{1, 2, 1, true}};
    for (int i = 0; i < 300; ++i) {
        const auto& root = gen.pick(roots);
        auto g1 = gen.clean_graph(root, 4);
        auto g2 = gen.clean_graph(root, 4);
        for (const auto& cfg : configs) {
            CHECK(graph_edit_distance(g1, g2, cfg) ==
                  testing::oracle_ged(g1, g2, cfg.node_insert_delete_cost, cfg.edge_insert_delete_cost,
                                      cfg.edge_relabel_cost));
        }
    }
}

TEST_CASE("metric properties on random graphs") {
    testing::Gen gen(77);
    game24::Problem root({2, 2, 3, 4});
    for (int i = 0; i < 300; ++i) {
        auto a = gen.clean_graph(root, 8);
        auto b = gen.clean_graph(root, 8);
        auto c = gen.clean_graph(root, 8);
        double ab = graph_edit_distance(a, b);
        CHECK(ab == graph_edit_distance(b, a));
        CHECK((ab == 0.0) == (a.nodes() == b.nodes() && testing::oracle_ged(a, b) == 0.0));
        CHECK(ab <= graph_edit_distance(a, c) + graph_edit_distance(c, b));
        double n = normalized_ged(a, b);
        CHECK(n >= 0.0);
        CHECK(n <= 1.0);
    }
}

TEST_CASE("pearson") {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2 * v + 3);
    CHECK(pearson_r(x, y) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(pearson_r(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(pearson_r(std::vector<double>{1, 2, 3}, std::vector<double>{2, 1, 3}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DegenerateInput);
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("permutation test") {
    std::vector<double> a{1, 2, 3, 4, 5, 6};
    auto same = permutation_test(a, a, Statistic::MeanDiff, 999, 3);
    CHECK(same.p_value >= 0.5);
    CHECK(same.p_value == 1.0);

    std::vector<double> zeros(50, 0.0);
    std::vector<double> hundreds(50, 100.0);
    auto far = permutation_test(zeros, hundreds, Statistic::MeanDiff, 10000, 1);
    CHECK(far.p_value == doctest::Approx(1.0 / 10001.0));
    CHECK(far.observed_statistic == -100.0);
    CHECK(far.n_permutations == 10000);

    std::vector<double> b{2, 4, 4, 5, 7, 9, 10};
    auto ab = permutation_test(a, b, Statistic::MeanDiff, 2000, 17);
    auto ba = permutation_test(b, a, Statistic::MeanDiff, 2000, 17);
    CHECK(ab.p_value == ba.p_value);
    CHECK(ab.observed_statistic == -ba.observed_statistic);
    CHECK(ab.p_value > 0.0);
    CHECK(ab.p_value <= 1.0);

    CHECK_THROWS_AS(permutation_test({}, a, Statistic::MeanDiff, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(permutation_test(a, a, Statistic::MeanDiff, 0, 1), std::invalid_argument);
}

TEST_CASE("KS helpers") {
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
    CHECK(ks_uniform_statistic(grid) == doctest::Approx(0.005));
    CHECK(ks_uniform_statistic(std::vector<double>(10, 0.0)) == doctest::Approx(1.0));
    CHECK(ks_critical_value(500, 0.01) == doctest::Approx(1.6276 / std::sqrt(500.0)).epsilon(1e-3));
}

namespace {

// Participants in `groups` stimulus groups; each group sees its own problems.
std::vector<Trial> synthetic_trials(std::size_t per_group, std::size_t groups, double noise, std::uint64_t seed,
                                    bool deterministic = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Trial> trials;
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t p = 0; p < per_group; ++p) {
            for (int k = 0; k < 10; ++k) {
                Trial t;
                t.participant_id = "g" + std::to_string(g) + "p" + std::to_string(p);
                t.trial_id = t.participant_id + "t" + std::to_string(k);
                t.stimulus_group = "s" + std::to_string(g);
                t.problem = {static_cast<int>(g) + 1, k + 1, 12, 13};
                double difficulty = 0.1 + 0.08 * k;
                t.correct = deterministic ? difficulty > 0.5 : unit(rng) < std::clamp(difficulty + gauss(rng), 0.0, 1.0);
                trials.push_back(t);
            }
        }
    }
    return trials;
}

}  // namespace

TEST_CASE("split-half correlation") {
    auto same = synthetic_trials(8, 3, 0.0, 1, true);
    auto r = split_half_problem_correlation(same, 9, 3, 20, 5);
    REQUIRE(r.correlations.size() == 20);
    for (double v : r.correlations) CHECK(v == doctest::Approx(1.0));

    REQUIRE(r.splits.size() == 20);
    for (const auto& split : r.splits) {
        CHECK(split.group_a.size() == 9);
        CHECK(split.group_b.size() == 9);
        std::set<std::string> a(split.group_a.begin(), split.group_a.end());
        for (const auto& id : split.group_b) CHECK_FALSE(a.count(id));
        // quota: 3 per stimulus group
        std::map<char, int> quota;
        for (const auto& id : split.group_a) ++quota[id[1]];
        for (const auto& [g, n] : quota) CHECK(n == 3);
    }

    CHECK_THROWS_AS(split_half_problem_correlation(same, 15, 5, 1, 1), InsufficientData);
    CHECK_THROWS_AS(split_half_problem_correlation(same, 10, 3, 1, 1), std::invalid_argument);

    // every participant identical on every problem: zero variance, split skipped
    auto flat = same;
    for (auto& t : flat) t.correct = true;
    auto skipped = split_half_problem_correlation(flat, 9, 3, 5, 1);
    CHECK(skipped.correlations.empty());
    CHECK(skipped.skipped_splits == 5);
}

TEST_CASE("split-half reliability grows with group size") {
    auto trials = synthetic_trials(60, 1, 0.1, 8);
    auto mean_r = [&](std::size_t size) {
        auto r = split_half_problem_correlation(trials, size, size, 200, 3);
        return mean(r.correlations);
    };
    double small = mean_r(3);
    double medium = mean_r(10);
    double large = mean_r(30);
    CHECK(small < medium);
    CHECK(medium < large);
}
