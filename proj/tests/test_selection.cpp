#include <gtest/gtest.h>

#include <set>

#include "veracity/selection.hpp"

using namespace veracity;

namespace {

/// Confusion counts over 100 balanced rows with the given accuracy and
/// false negatives.
Metrics metrics(int correct, int fn = -1) {
    Metrics m;
    const int wrong = 100 - correct;
    if (fn < 0) fn = wrong / 2;
    m.fn = static_cast<std::size_t>(fn);
    m.fp = static_cast<std::size_t>(wrong - fn);
    m.tp = static_cast<std::size_t>(50 - fn);
    m.tn = static_cast<std::size_t>(50 - (wrong - fn));
    return m;
}

Candidate cand(std::size_t index, const std::string& spec, std::optional<Metrics> val, std::string error = {}) {
    return {index, ClassifierSpec::parse(spec), val, std::move(error)};
}

}  // namespace

TEST(Selection, TopThreeByValidationAccuracy) {
    std::vector<Candidate> zoo = {
        cand(0, "logistic", metrics(50)),          cand(1, "linear_svm", metrics(90)),
        cand(2, "naive_bayes", metrics(70)),       cand(3, "quadratic_svm", metrics(80)),
        cand(4, "bagged_trees", metrics(60)),
    };
    std::set<std::size_t> tested;
    const auto sel = select_finalists(90, zoo, [&](const Candidate& c) {
        tested.insert(c.index);
        return metrics(c.index == 3 ? 95 : 85);
    });
    EXPECT_EQ(tested, (std::set<std::size_t>{1, 2, 3}));
    ASSERT_EQ(sel.finalists.size(), 3u);
    EXPECT_EQ(sel.finalists[0].index, 1u);
    EXPECT_EQ(sel.finalists[1].index, 3u);
    EXPECT_EQ(sel.finalists[2].index, 2u);
    EXPECT_EQ(sel.best().index, 3u);
    EXPECT_EQ(sel.ranked.size(), 5u);
}

TEST(Selection, ThirdPlaceTieBrokenByF1ThenName) {
    // Same accuracy; fn=2 gives higher F1 than fn=8 for positive class fake.
    std::vector<Candidate> zoo = {
        cand(0, "linear_svm", metrics(95)),
        cand(1, "logistic", metrics(90)),
        cand(2, "naive_bayes", metrics(80, 8)),
        cand(3, "bagged_trees", metrics(80, 2)),
        cand(4, "quadratic_svm", metrics(80, 2)),
    };
    ASSERT_GT(metrics(80, 2).f1(), metrics(80, 8).f1());
    const auto sel = select_finalists(30, zoo, [](const Candidate&) { return metrics(70); });
    EXPECT_EQ(sel.finalists[2].spec.name(), "bagged_trees");
    EXPECT_EQ(sel.ranked[3].spec.name(), "quadratic_svm");
    EXPECT_EQ(sel.ranked[4].spec.name(), "naive_bayes");
    // Equal test accuracy keeps validation order.
    EXPECT_EQ(sel.winner, 0u);
}

TEST(Selection, FailuresAreRecordedAndSkipped) {
    std::vector<Candidate> zoo = {
        cand(0, "linear_svm", std::nullopt, "solver diverged"),
        cand(1, "logistic", metrics(60)),
        cand(2, "naive_bayes", metrics(70)),
    };
    int calls = 0;
    const auto sel = select_finalists(60, zoo, [&](const Candidate&) {
        ++calls;
        return metrics(60);
    });
    EXPECT_EQ(calls, 2);
    EXPECT_EQ(sel.finalists.size(), 2u);
    EXPECT_FALSE(sel.ranked.back().ok());
    EXPECT_EQ(sel.ranked.back().error, "solver diverged");
    const auto j = selection_json({sel});
    EXPECT_EQ(j["per_words"][0]["leaderboard"][2]["error"], "solver diverged");

    std::vector<Candidate> dead = {cand(0, "linear_svm", std::nullopt, "x"), cand(1, "logistic", std::nullopt, "y")};
    EXPECT_THROW(select_finalists(60, dead, [](const Candidate&) { return metrics(50); }), ModelError);
}

TEST(Selection, TrainCandidatesRejectsSmallZoo) {
    FeatureMatrix m;
    std::vector<ClassifierSpec> zoo = {ClassifierSpec(Family::linear_svm), ClassifierSpec(Family::logistic)};
    EXPECT_THROW(train_candidates(zoo, m, m, {}), ConfigError);
}

TEST(Selection, LeaderboardShape) {
    std::vector<Candidate> zoo = {
        cand(0, "quadratic_svm:C=10,coef0=10", metrics(88, 6)),
        cand(1, "linear_svm", metrics(87)),
        cand(2, "bagged_trees", metrics(86)),
    };
    const auto sel = select_finalists(90, zoo, [](const Candidate& c) { return metrics(c.index == 0 ? 87 : 80, 9); });
    const auto csv = render_leaderboard({sel});
    EXPECT_EQ(csv,
              "words,model,recall,f1,accuracy\n"
              "90,\"Quadratic SVM [quadratic_svm:C=10,coef0=10]\",82.0,86.3,87.0\n"
              "90,Linear SVM [linear_svm],82.0,80.4,80.0\n"
              "90,Bagged Trees [bagged_trees],82.0,80.4,80.0\n");
}

TEST(Selection, MetricsJsonRoundTrip) {
    const auto m = metrics(85, 4);
    EXPECT_EQ(metrics_from_json(nlohmann::json::parse(metrics_json(m).dump())), m);
}

TEST(Selection, OverallWinnerAcrossWordCounts) {
    auto one = [](int words, int acc) {
        std::vector<Candidate> z = {cand(0, "linear_svm", metrics(90)), cand(1, "logistic", metrics(80)),
                                    cand(2, "naive_bayes", metrics(70))};
        return select_finalists(words, z, [&](const Candidate&) { return metrics(acc); });
    };
    std::vector<WordCountSelection> all = {one(30, 54), one(60, 70), one(90, 87), one(120, 87)};
    EXPECT_EQ(all[overall_winner(all)].words, 90);
}
