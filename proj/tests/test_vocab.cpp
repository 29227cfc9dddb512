#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>

#include "veracity/vocab.hpp"

using namespace veracity;

namespace {

TokenStream ts(std::vector<std::string> tokens, int words = 90) {
    TokenStream t;
    t.tokens = std::move(tokens);
    t.stemmed = true;
    t.words = words;
    return t;
}

WordCounts counts(std::initializer_list<std::pair<const char*, std::uint64_t>> kv, int words = 90) {
    WordCounts wc;
    for (auto [w, c] : kv) wc.counts[w] = c;
    wc.words = words;
    return wc;
}

FunctionWordList stop(std::vector<std::string> words) { return FunctionWordList(words); }

std::vector<TokenStream> random_docs(std::uint64_t seed, std::size_t n, int words) {
    Rng rng(seed);
    const std::vector<std::string> pool{"gun", "citi", "vote", "elect", "tax", "law", "bill", "court",
                                        "war", "oil", "trade", "job", "state", "polic", "school", "health"};
    std::vector<TokenStream> docs;
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<std::string> toks;
        const auto len = uniform_index(rng, static_cast<std::uint64_t>(words) + 1);
        for (std::uint64_t i = 0; i < len; ++i) toks.push_back(pool[uniform_index(rng, pool.size())]);
        docs.push_back(ts(std::move(toks), words));
    }
    return docs;
}

}  // namespace

TEST(ListA, SmallExample) {
    std::vector<TokenStream> docs{ts({"a", "b", "a"}), ts({"b", "c"})};
    const auto a = build_list_a(docs);
    EXPECT_EQ(a.counts, (std::map<std::string, std::uint64_t, std::less<>>{{"a", 2}, {"b", 2}, {"c", 1}}));
    docs.push_back(ts({}));
    EXPECT_EQ(build_list_a(docs).counts, a.counts);
}

TEST(ListA, EmptyCorpusAndMixedX) {
    EXPECT_THROW(build_list_a(std::vector<TokenStream>{}), DataError);
    std::vector<TokenStream> mixed{ts({"a"}, 30), ts({"b"}, 90)};
    EXPECT_THROW(build_list_a(mixed), DataError);
}

TEST(ListA, MatchesBruteForceRecount) {
    const auto docs = random_docs(3, 1000, 90);
    const auto a = build_list_a(docs);
    std::map<std::string, std::uint64_t> oracle;
    for (const auto& d : docs) {
        for (std::size_t i = 0; i < d.tokens.size(); ++i) {
            oracle[d.tokens[i]] += 1;
        }
    }
    ASSERT_EQ(a.counts.size(), oracle.size());
    for (const auto& [w, c] : oracle) EXPECT_EQ(a.at(w), c) << w;
}

TEST(MinFrequency, TableValues) {
    EXPECT_EQ(min_frequency_for(30), 4);
    EXPECT_EQ(min_frequency_for(60), 5);
    EXPECT_EQ(min_frequency_for(90), 6);
    EXPECT_EQ(min_frequency_for(120), 6);
    try {
        min_frequency_for(45);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("min_freq"), std::string::npos);
    }
}

TEST(ListB, FilterStopwordsOrder) {
    const auto v = build_list_b(counts({{"the", 50}, {"gun", 7}, {"of", 40}, {"city", 6}, {"rare", 2}}), 6,
                                stop({"the", "of"}));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v.entries()[0].stem, "gun");
    EXPECT_EQ(v.entries()[1].stem, "city");
}

TEST(ListB, LexicographicTiebreak) {
    const auto v = build_list_b(counts({{"city", 6}, {"act", 6}}), 6, stop({"the"}));
    EXPECT_EQ(v.entries()[0].stem, "act");
    EXPECT_EQ(v.entries()[1].stem, "city");
}

TEST(ListB, CapAtThousand) {
    WordCounts wc;
    wc.words = 90;
    for (int i = 0; i < 1500; ++i) wc.counts["w" + std::to_string(i)] = static_cast<std::uint64_t>(6 + i % 37);
    const auto v = build_list_b(wc, 6, stop({"the"}));
    EXPECT_EQ(v.size(), 1000u);
    for (std::size_t i = 1; i < v.size(); ++i) {
        const auto& a = v.entries()[i - 1];
        const auto& b = v.entries()[i];
        ASSERT_TRUE(a.frequency > b.frequency || (a.frequency == b.frequency && a.stem < b.stem));
    }
}

TEST(ListB, EmptyResultAndBadCap) {
    EXPECT_THROW(build_list_b(counts({{"the", 50}}), 6, stop({"the"})), DataError);
    EXPECT_THROW(build_list_b(counts({{"gun", 50}}), 6, stop({"the"}), 0), ConfigError);
}

TEST(ListB, DefaultFunctionWordsNeverSelected) {
    WordCounts wc;
    wc.words = 90;
    for (auto w : kFunctionWords) wc.counts[stem(w)] = 100;
    wc.counts["gun"] = 10;
    const auto v = build_list_b(wc, 6, FunctionWordList::defaults());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v.entries()[0].stem, "gun");
    EXPECT_GE(FunctionWordList::defaults().size(), 250u);
}

TEST(ListB, IndependentOfDocumentOrder) {
    auto docs = random_docs(5, 300, 30);
    const auto a = build_list_b(build_list_a(docs), 4, stop({"the"})).serialize();
    Rng rng(9);
    shuffle(docs.begin(), docs.end(), rng);
    EXPECT_EQ(build_list_b(build_list_a(docs), 4, stop({"the"})).serialize(), a);
}

TEST(Vocabulary, SerializationRoundTrip) {
    const auto v = build_list_b(build_list_a(random_docs(8, 200, 60)), 5, stop({"the"}));
    const auto text = v.serialize();
    EXPECT_EQ(text.substr(0, text.find('\n')), "60,5,1000");
    const auto back = Vocabulary::parse(text);
    EXPECT_EQ(back.serialize(), text);
    EXPECT_EQ(back.entries(), v.entries());
    EXPECT_EQ(back.params(), v.params());
    EXPECT_EQ(back.fingerprint(), v.fingerprint());
}

TEST(Vectorize, Counts) {
    const auto vocab = build_list_b(counts({{"gun", 9}, {"citi", 7}}), 6, stop({"the"}));
    EXPECT_EQ(vectorize("d", ts({"gun", "citi", "gun"}), vocab).values, (std::vector<double>{2, 1}));
    EXPECT_EQ(vectorize("d", ts({"the", "of"}), vocab).values, (std::vector<double>{0, 0}));
    EXPECT_THROW(vectorize("d", ts({"gun"}, 30), vocab), DataError);
}

TEST(Vectorize, MatchesBruteForceAndSumBound) {
    const auto docs = random_docs(11, 100, 90);
    const auto vocab = build_list_b(build_list_a(docs), 6, stop({"the"}));
    Vectorizer vz(vocab);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto v = vz("d" + std::to_string(d), docs[d]);
        double sum = 0;
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            const auto& w = vocab.entries()[i].stem;
            const auto expect = std::count(docs[d].tokens.begin(), docs[d].tokens.end(), w);
            ASSERT_EQ(v.values[i], static_cast<double>(expect));
            sum += v.values[i];
        }
        EXPECT_LE(sum, 90.0);
    }
}

TEST(Vectorize, TfidfUsesTrainingDocumentFrequencies) {
    const auto vocab = build_list_b(counts({{"gun", 9}, {"citi", 7}}), 6, stop({"the"}));
    std::vector<TokenStream> train{ts({"gun", "citi"}), ts({"gun"}), ts({"vote"}), ts({"gun", "gun"})};
    const auto df = document_frequencies(train, vocab);
    EXPECT_EQ(df.df, (std::vector<std::size_t>{3, 1}));
    Vectorizer vz(vocab, VectorMode::tfidf, df);
    const auto v = vz("x", ts({"gun", "gun", "citi"}));
    EXPECT_DOUBLE_EQ(v.values[0], 2.0 * std::log(4.0 / 3.0));
    EXPECT_DOUBLE_EQ(v.values[1], std::log(4.0));
    EXPECT_THROW(Vectorizer(vocab, VectorMode::tfidf), ConfigError);
}
