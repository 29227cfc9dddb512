#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "veracity/linguistic.hpp"

using namespace veracity;

namespace {

const Lexicons& lx() { return Lexicons::shipped(); }

TokenStream words(std::string_view s) { return tokenize(clean_text(s)); }

}  // namespace

TEST(Lexicon, ShippedFilesLoadWithChecksums) {
    EXPECT_EQ(lx().versions.size(), 3u);
    EXPECT_GT(lx().valence.size(), 3000u);
    EXPECT_GT(lx().pos.size(), 50000u);
    for (const char* w : {"excellent", "wonderful", "great"}) EXPECT_EQ(lx().valence_of(w), 1.0) << w;
    EXPECT_TRUE(lx().category_mask("i") & cat_self);
}

TEST(Lexicon, RoundTripAndCorruption) {
    const std::vector<std::pair<std::string, std::string>> rows = {{"good", "0.5"}, {"bad", "-0.5"}};
    const auto text = render_lexicon("valence", 3, rows);
    const auto lf = parse_lexicon(text, "valence");
    EXPECT_EQ(lf.version, 3);
    EXPECT_EQ(lf.rows, rows);

    std::string tampered = text;
    tampered[tampered.size() - 2] = '4';
    EXPECT_THROW(parse_lexicon(tampered, "valence"), ConfigError);
    EXPECT_THROW(parse_lexicon(text, "pos"), ConfigError);
    EXPECT_THROW(parse_lexicon("good\t1\n", "valence"), ConfigError);

    Lexicons l;
    const std::vector<std::pair<std::string, std::string>> bad = {{"x", "2"}};
    EXPECT_THROW(l.add(parse_lexicon(render_lexicon("valence", 1, bad), "valence")), ConfigError);
    const std::vector<std::pair<std::string, std::string>> bad_tag = {{"x", "gerund"}};
    EXPECT_THROW(l.add(parse_lexicon(render_lexicon("pos", 1, bad_tag), "pos")), ConfigError);
    EXPECT_THROW(Lexicons::load("/nonexistent/lexicons"), ConfigError);
}

TEST(PosTagger, RulesInPriorityOrder) {
    EXPECT_EQ(tag_word("quickly"), PosTag::adverb);
    EXPECT_EQ(tag_word("she"), PosTag::pronoun);
    EXPECT_EQ(tag_word("would"), PosTag::verb);
    // Unknown forms fall through to the suffix rules.
    EXPECT_EQ(tag_word("blarvingly"), PosTag::adverb);
    EXPECT_EQ(tag_word("zorbous"), PosTag::adjective);
    EXPECT_EQ(tag_word("kremful"), PosTag::adjective);
    EXPECT_EQ(tag_word("vantive"), PosTag::adjective);
    EXPECT_EQ(tag_word("plomtion"), PosTag::noun);
    EXPECT_EQ(tag_word("drabness"), PosTag::noun);
    EXPECT_EQ(tag_word("quostment"), PosTag::noun);
    EXPECT_EQ(tag_word("zzq"), PosTag::other);
    TokenStream stemmed = words("running");
    stemmed.stemmed = true;
    EXPECT_THROW(tag_pos(stemmed), DataError);
}

TEST(PosTagger, HandTaggedSentence) {
    // Tagged by hand before the tagger existed; at least 10 of 12 must agree.
    const auto ts = words("He never answered the angry letters from his former colleagues in Congress.");
    const std::vector<PosTag> gold = {PosTag::pronoun, PosTag::adverb,  PosTag::verb,      PosTag::other,
                                      PosTag::adjective, PosTag::noun,  PosTag::other,     PosTag::pronoun,
                                      PosTag::adjective, PosTag::noun,  PosTag::other,     PosTag::noun};
    ASSERT_EQ(ts.size(), 12u);
    const auto tags = tag_pos(ts);
    int agree = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) agree += tags[i] == gold[i];
    EXPECT_GE(agree, 10);
}

TEST(PosTagger, EnglishFixtureCoverage) {
    const auto ts = words(read_file(std::string(VERACITY_TEST_DATA) + "/english_fixture.txt"));
    ASSERT_GT(ts.size(), 300u);
    const auto tags = tag_pos(ts);
    const auto other = std::count(tags.begin(), tags.end(), PosTag::other);
    EXPECT_LE(static_cast<double>(other) / static_cast<double>(tags.size()), 0.40);
}

TEST(Sentiment, ThresholdExamples) {
    EXPECT_EQ(sentiment_of_sentence("excellent wonderful great"), SentimentClass::very_positive);
    EXPECT_EQ(sentiment_of_sentence("the of and"), SentimentClass::neutral);
    EXPECT_EQ(sentiment_of_sentence(""), SentimentClass::neutral);
}

TEST(Sentiment, MixedFixtureByHand) {
    // Matched words and their shipped values:
    // charming +1, amazing +1, beloved +1, brave +2/3, applause +2/3,
    // awful -1, accident -2/3, broken -1/3, clear +1/3, active +1/3.
    // Sum 3, ten matches, mean 0.3.
    const char* s =
        "The charming town was amazing and beloved, the brave crowd gave applause, despite an awful accident, "
        "a broken road and clear, active plans.";
    EXPECT_NEAR(sentence_valence(s), 0.3, 1e-6);
    EXPECT_EQ(sentiment_of_sentence(s), SentimentClass::positive);
}

TEST(Sentiment, ClassesPartitionTheLine) {
    EXPECT_EQ(sentiment_class(-0.5), SentimentClass::negative);
    EXPECT_EQ(sentiment_class(-0.5000001), SentimentClass::very_negative);
    EXPECT_EQ(sentiment_class(-0.1), SentimentClass::neutral);
    EXPECT_EQ(sentiment_class(-0.1000001), SentimentClass::negative);
    EXPECT_EQ(sentiment_class(0.1), SentimentClass::neutral);
    EXPECT_EQ(sentiment_class(0.1000001), SentimentClass::positive);
    EXPECT_EQ(sentiment_class(0.5), SentimentClass::positive);
    EXPECT_EQ(sentiment_class(0.5000001), SentimentClass::very_positive);
    SentimentClass prev = SentimentClass::very_negative;
    for (int i = -1000; i <= 1000; ++i) {
        const auto c = sentiment_class(i / 1000.0);
        EXPECT_GE(static_cast<int>(c), static_cast<int>(prev));
        prev = c;
    }
}

TEST(Lengths, HandArithmetic) {
    const auto a = length_stats("ab abcd. a abc abcde.");
    EXPECT_EQ(a.words, 5u);
    EXPECT_EQ(a.sentences, 2u);
    EXPECT_DOUBLE_EQ(a.mean_word(), 3.0);
    EXPECT_DOUBLE_EQ(a.mean_sentence(), 2.5);
    const auto b = length_stats("hello");
    EXPECT_DOUBLE_EQ(b.mean_word(), 5.0);
    EXPECT_DOUBLE_EQ(b.mean_sentence(), 1.0);
    const auto c = length_stats("");
    EXPECT_EQ(c.words, 0u);
    EXPECT_EQ(c.sentences, 0u);
    EXPECT_EQ(c.mean_word(), 0.0);
}

TEST(Lengths, SyntheticRecount) {
    Rng rng(123);
    for (int doc = 0; doc < 100; ++doc) {
        std::string text;
        std::vector<std::size_t> word_lengths, sentence_lengths;
        const auto n_sent = 1 + uniform_index(rng, 8);
        for (std::uint64_t s = 0; s < n_sent; ++s) {
            const auto n_words = 1 + uniform_index(rng, 15);
            sentence_lengths.push_back(n_words);
            for (std::uint64_t w = 0; w < n_words; ++w) {
                const auto len = 1 + uniform_index(rng, 9);
                word_lengths.push_back(len);
                std::string word;
                for (std::uint64_t k = 0; k < len; ++k) word.push_back(static_cast<char>('a' + uniform_index(rng, 26)));
                if (w == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
                text += word;
                text += w + 1 == n_words ? (uniform_index(rng, 2) ? ". " : "! ") : (uniform_index(rng, 4) ? " " : ", ");
            }
        }
        const auto ls = length_stats(text);
        ASSERT_EQ(ls.sentences, sentence_lengths.size()) << text;
        ASSERT_EQ(ls.words, word_lengths.size());
        const double wsum = std::accumulate(word_lengths.begin(), word_lengths.end(), 0.0);
        const double ssum = std::accumulate(sentence_lengths.begin(), sentence_lengths.end(), 0.0);
        EXPECT_DOUBLE_EQ(ls.word_sum, wsum);
        EXPECT_DOUBLE_EQ(ls.sentence_sum, ssum);
        double wsq = 0;
        for (auto l : word_lengths) wsq += static_cast<double>(l * l);
        EXPECT_DOUBLE_EQ(ls.word_sq, wsq);
    }
}

TEST(Tone, FormulaLimits) {
    EXPECT_NEAR(tone_summary("excellent wonderful great happy").emotional_tone, 100.0, 1e-6);
    EXPECT_NEAR(tone_summary("awful angry").emotional_tone, 0.0, 1e-6);
    const auto none = tone_summary("The market opened on Monday.");
    EXPECT_EQ(none.authenticity, 50.0);
    EXPECT_EQ(none.emotional_tone, 50.0);
    const auto empty = tone_summary("");
    EXPECT_EQ(empty.authenticity, 50.0);
    EXPECT_EQ(empty.formality, 50.0);
}

TEST(Tone, HandTrace) {
    // 26 tokens. self: i, my. exclusive: but. discrepancy: should.
    // positive: happy x2. negative: sad.
    // authenticity = 50 + 500 * (2 + 1 - 1) / 26 = 50 + 1000 / 26
    // emotional tone = 50 + 50 * (2 - 1) / 3 = 66.667
    const auto t = tone_summary(
        "I visited the old market on Monday and bought bread, but the shop should open earlier for my happy, "
        "happy and sad neighbors in the morning.");
    EXPECT_NEAR(t.authenticity, 50.0 + 1000.0 / 26.0, 1e-9);
    EXPECT_NEAR(t.emotional_tone, 50.0 + 50.0 / 3.0, 1e-6);
}

TEST(Tone, AlwaysBounded) {
    Rng rng(8);
    const std::vector<std::string> pool = {"i",   "my",    "but",  "should", "happy", "awful", "the",
                                           "of",  "quickly", "she", "great", "need",  "market"};
    for (int trial = 0; trial < 500; ++trial) {
        std::string doc;
        const auto n = uniform_index(rng, 30);
        for (std::uint64_t i = 0; i < n; ++i) doc += pool[uniform_index(rng, pool.size())] + " ";
        const auto t = tone_summary(doc);
        for (double v : {t.authenticity, t.emotional_tone, t.formality}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 100.0);
        }
    }
}

namespace {

std::vector<ArticleFeatures> sample_articles() {
    const std::vector<std::string> bodies = {
        "The council approved the budget. Critics said it was awful!",
        "She quickly left the building. Nobody saw her again.",
        "Great news for the farmers. The rain finally arrived and crops recovered.",
        "I think we should wait. But the vote is tomorrow.",
        "Police arrested two men. The owner was not injured.",
    };
    std::vector<ArticleFeatures> out;
    for (std::size_t i = 0; i < bodies.size(); ++i)
        out.push_back(extract_features("a" + std::to_string(i), i % 2 ? Label::fake : Label::credible, bodies[i]));
    return out;
}

}  // namespace

TEST(Profile, SingleArticleEqualsItsFeatures) {
    const auto arts = sample_articles();
    const auto p = corpus_profile(std::span(arts).subspan(1, 1), Label::fake);
    EXPECT_EQ(p.articles, 1u);
    EXPECT_EQ(p.pos.counts, arts[1].pos);
    EXPECT_EQ(p.pos.total, arts[1].tokens);
    EXPECT_EQ(p.sentiment, arts[1].sentiment);
    EXPECT_EQ(p.lengths, arts[1].lengths);
    EXPECT_EQ(p.authenticity, std::vector<double>{arts[1].tone.authenticity});
    const auto sum = std::accumulate(p.pos.counts.begin(), p.pos.counts.end(), std::uint64_t{0});
    EXPECT_EQ(sum, p.pos.total);
}

TEST(Profile, PermutationInvariantAndAdditive) {
    auto arts = sample_articles();
    const auto a = corpus_profile(arts, Label::credible);
    std::reverse(arts.begin(), arts.end());
    EXPECT_EQ(corpus_profile(arts, Label::credible), a);

    const auto all = sample_articles();
    auto left = corpus_profile(std::span(all).subspan(0, 3), Label::credible);
    const auto right = corpus_profile(std::span(all).subspan(3), Label::credible);
    left.merge(right);
    EXPECT_EQ(left, a);
    EXPECT_THROW(corpus_profile(std::span(all).subspan(1, 1), Label::credible), DataError);
}

TEST(Profile, FeatureLineRoundTrip) {
    for (const auto& f : sample_articles()) {
        const auto line = features_dump_line(f);
        EXPECT_EQ(line.find('\n'), std::string::npos);
        EXPECT_EQ(parse_features_line(line), f);
    }
    EXPECT_THROW(parse_features_line("{\"id\":1}"), DataError);
}
