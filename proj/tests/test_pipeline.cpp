#include <gtest/gtest.h>

#include "veracity/pipeline.hpp"
#include "veracity/synthetic.hpp"

using namespace veracity;

TEST(RunConfig, ParseSerializeRoundTrip) {
    const auto c = RunConfig::parse(
        "# comment\n"
        "corpus = data/c.jsonl\n"
        "words = 30, 90\n"
        "seed = 42\n"
        "min_freq = 3\n"
        "vector_mode = tfidf\n"
        "reduce = false\n"
        "split = 0.5,0.25,0.25\n"
        "zoo = linear_svm; logistic:C=0.1; naive_bayes\n",
        "/base");
    EXPECT_EQ(c.corpus, "/base/data/c.jsonl");
    EXPECT_EQ(c.words, (std::vector<int>{30, 90}));
    EXPECT_EQ(c.seed_value(), 42u);
    EXPECT_EQ(c.min_freq_for(90), 3);
    EXPECT_EQ(c.vector_mode, VectorMode::tfidf);
    EXPECT_FALSE(c.reduce);
    EXPECT_EQ(c.fractions.validation, 0.25);
    EXPECT_EQ(c.zoo_specs().size(), 3u);
    EXPECT_NO_THROW(c.validate());
    const auto again = RunConfig::parse(c.serialize());
    EXPECT_EQ(again.serialize(), c.serialize());
}

TEST(RunConfig, Errors) {
    EXPECT_THROW(RunConfig::parse("colour = red\n"), ConfigError);
    EXPECT_THROW(RunConfig::parse("seed = 1\nseed = 2\n"), ConfigError);
    EXPECT_THROW(RunConfig::parse("seed = x\n"), ConfigError);
    EXPECT_THROW(RunConfig::parse("reduce = maybe\n"), ConfigError);
    EXPECT_THROW(RunConfig::parse("just words\n"), ConfigError);
    EXPECT_THROW(RunConfig::parse("words = 90\n").validate(), ConfigError);  // no seed
    EXPECT_THROW(RunConfig::parse("seed = 1\nwords = 45\n").validate(), ConfigError);
    EXPECT_NO_THROW(RunConfig::parse("seed = 1\nwords = 45\nmin_freq = 5\n").validate());
    EXPECT_THROW(RunConfig::parse("seed = 1\nzoo = linear_svm;logistic\n").validate(), ConfigError);
    EXPECT_THROW(RunConfig::parse("seed = 1\nsplit = 0.5,0.5,0.5\n").validate(), ConfigError);
    EXPECT_THROW(RunConfig::parse("seed = 1\nformat = xml\n").validate(), ConfigError);
    EXPECT_THROW(RunConfig::load("/nonexistent/run.cfg"), ConfigError);
}

TEST(Pipeline, MissingUpstreamNamesCommand) {
    RunConfig c;
    c.seed = 1;
    c.out = (std::filesystem::temp_directory_path() / "veracity_missing_upstream").string();
    std::filesystem::remove_all(c.out);
    Pipeline p(c);
    try {
        p.vocab();
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("veracity ingest"), std::string::npos) << e.what();
    }
    EXPECT_FALSE(std::filesystem::exists(c.out));
}

namespace {

const Corpus& small_corpus() {
    static const Corpus c = [] {
        SyntheticParams p;
        p.articles = 400;
        return generate_corpus(build_synthetic_model(p), 3);
    }();
    return c;
}

}  // namespace

TEST(Pipeline, SplitDocsFollowAssignment) {
    const auto& corpus = small_corpus();
    const auto split = split_corpus(corpus, {}, 3);
    const auto patterns = parse_boilerplate_patterns(default_boilerplate_specs());
    const auto docs = prepare_corpus(corpus, patterns, PrepConfig{90});
    const auto g = group_by_split(corpus, docs, split);
    EXPECT_EQ(g.of(Split::train).size(), 240u);
    EXPECT_EQ(g.of(Split::validation).size(), 80u);
    EXPECT_EQ(g.of(Split::test).size(), 80u);
    for (Split s : {Split::train, Split::validation, Split::test}) {
        for (std::size_t i = 0; i < g.of(s).size(); ++i) {
            EXPECT_EQ(split.at(g.of(s)[i]->id), s);
            EXPECT_EQ(corpus.find(g.of(s)[i]->id)->label, g.labels[static_cast<std::size_t>(s)][i]);
        }
    }
    const auto vocab = build_vocabulary(g, 6, 1000, FunctionWordList::defaults());
    const auto m = build_matrices(g, vocab, VectorMode::count);
    EXPECT_EQ(m.train.rows(), 240);
    EXPECT_EQ(m.test.cols(), static_cast<Eigen::Index>(vocab.size()));
    for (Eigen::Index r = 0; r < m.train.rows(); ++r) EXPECT_LE(m.train.values.row(r).sum(), 90.0);
}

TEST(Pipeline, AnalysisRowsAndPlantedEffects) {
    const auto& corpus = small_corpus();
    const auto patterns = parse_boilerplate_patterns(default_boilerplate_specs());
    const auto docs = prepare_corpus(corpus, patterns, PrepConfig{90});
    const auto g = group_by_split(corpus, docs, split_corpus(corpus, {}, 3));
    const auto vocab = build_vocabulary(g, 6, 1000, FunctionWordList::defaults());
    const auto res = analyze_corpus(corpus, patterns, vocab, Lexicons::shipped());
    for (const char* f : {"pos.noun", "pos.verb", "pos.adjective", "pos.adverb", "pos.pronoun", "sentiment.neutral",
                          "length.word", "length.sentence", "tone.authenticity.z", "tone.emotional_tone.chi2",
                          "words.chi2", "words.list_b_tokens.z"}) {
        EXPECT_NE(res.find(f), nullptr) << f;
    }
    EXPECT_EQ(res.find("pos.other"), nullptr);
    EXPECT_GT(res.find("pos.adverb")->result.statistic, 0);
    EXPECT_LT(res.find("pos.adverb")->result.p_value, 0.01);
    EXPECT_LT(res.find("words.chi2")->result.p_value, 0.0001);
    EXPECT_EQ(res.features.size(), corpus.size());
    EXPECT_EQ(res.fake.articles + res.credible.articles, corpus.size());
    EXPECT_EQ(res.influential.size(), 20u);
}

TEST(Pipeline, DegenerateTestsAreSkippedWithNote) {
    std::vector<ArticleRecord> recs;
    for (int i = 0; i < 4; ++i) {
        ArticleRecord a;
        a.id = "a" + std::to_string(i);
        a.label = i % 2 ? Label::fake : Label::credible;
        a.source_id = i % 2 ? "f" : "c";
        a.raw_text = i % 2 ? "The senator quickly spoke. She spoke again." : "The senator spoke. He spoke twice.";
        recs.push_back(a);
    }
    const Corpus corpus(recs);
    Vocabulary vocab({{"senat", 4}, {"spoke", 8}}, VocabParams{90, 1, 1000});
    const auto res = analyze_corpus(corpus, {}, vocab, Lexicons::shipped());
    EXPECT_EQ(res.find("sentiment.very_positive"), nullptr);
    bool noted = false;
    for (const auto& n : res.notes) noted |= n.rfind("sentiment.very_positive skipped", 0) == 0;
    EXPECT_TRUE(noted);
    EXPECT_NE(res.find("pos.adverb"), nullptr);
}

TEST(Pipeline, ReportIsAPureFunctionOfArtifacts) {
    const std::string lb = "words,model,recall,f1,accuracy\n90,Linear SVM [linear_svm],82.0,80.4,80.0\n";
    const auto sel = nlohmann::json::parse(R"({"per_words":[{"words":90,"leaderboard":[{"index":0,"spec":"linear_svm"}],
        "finalists":[{"spec":"linear_svm","test":{"fake_accuracy":0.82,"credible_accuracy":0.78}}],"winner":"linear_svm"}],
        "winner":{"words":90,"spec":"linear_svm","test":{"accuracy":0.8}}})");
    const std::string st = "feature,statistic,df,p\npos.adverb,2.561,,0.0104\nwords.chi2,630.5,576,0.0574\n";
    const std::string iw = "rank,word,statistic,p,count_fake,count_credible\n1,gun,5.5,1e-8,40,3\n";
    const auto an = nlohmann::json::parse(R"({"fake":{"articles":1,"pos_rate":{"adverb":0.1},"mean_word_length":4,
        "mean_sentence_length":20,"mean_authenticity":50,"mean_emotional_tone":60},
        "credible":{"articles":1,"pos_rate":{"adverb":0.07},"mean_word_length":4,"mean_sentence_length":20,
        "mean_authenticity":50,"mean_emotional_tone":60},"notes":["x skipped: y"]})");
    const auto a = render_report("seed = 1\n", lb, sel, st, iw, an);
    EXPECT_EQ(a, render_report("seed = 1\n", lb, sel, st, iw, an));
    EXPECT_NE(a.find("| 90 | Linear SVM [linear_svm] | 82.0 | 80.4 | 80.0 |"), std::string::npos);
    EXPECT_NE(a.find("| words.chi2 | 630.500 | 576 | 0.0574 |"), std::string::npos);
    EXPECT_NE(a.find("- x skipped: y"), std::string::npos);
    EXPECT_THROW(render_report("", "words\n90,a\n", sel, st, iw, an), DataError);
}
