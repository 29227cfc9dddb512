#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "veracity/synthetic.hpp"
#include "veracity/vocab.hpp"

using namespace veracity;

namespace {

const SyntheticModel& model() {
    static const SyntheticModel m = build_synthetic_model(SyntheticParams{});
    return m;
}

}  // namespace

TEST(SyntheticModel, DistributionsAreNormalized) {
    double c = 0, f = 0;
    for (const auto& w : model().words) {
        EXPECT_GE(w.p_credible, 0.0) << w.text;
        EXPECT_GE(w.p_fake, 0.0) << w.text;
        c += w.p_credible;
        f += w.p_fake;
    }
    EXPECT_NEAR(c, 1.0, 1e-12);
    EXPECT_NEAR(f, 1.0, 1e-12);
    EXPECT_EQ(model().words.size(), 1200u);
}

TEST(SyntheticModel, TotalVariationHitsTarget) {
    EXPECT_NEAR(model().total_variation(), 0.25, 1e-9);
    EXPECT_GT(model().delta, 0.0);
    EXPECT_LT(model().delta, 0.95);
}

TEST(SyntheticModel, AdverbRateGap) {
    const double c = model().tag_mass(PosTag::adverb, Label::credible);
    const double f = model().tag_mass(PosTag::adverb, Label::fake);
    EXPECT_NEAR(f / c, 1.4, 1e-9);
}

TEST(SyntheticModel, WordClassesMatchTagger) {
    const auto& lx = Lexicons::shipped();
    const auto& fw = FunctionWordList::defaults();
    for (const auto& w : model().words) {
        switch (w.cls) {
            case SynthClass::function: EXPECT_TRUE(fw.contains(w.text)) << w.text; break;
            case SynthClass::valence:
                EXPECT_TRUE(lx.has_valence(w.text)) << w.text;
                EXPECT_FALSE(fw.contains(w.text)) << w.text;
                break;
            case SynthClass::noun: EXPECT_EQ(tag_word(w.text, lx), PosTag::noun) << w.text; break;
            case SynthClass::adjective: EXPECT_EQ(tag_word(w.text, lx), PosTag::adjective) << w.text; break;
            case SynthClass::adverb: EXPECT_EQ(tag_word(w.text, lx), PosTag::adverb) << w.text; break;
            case SynthClass::other:
            case SynthClass::marker:
                EXPECT_EQ(tag_word(w.text, lx), PosTag::other) << w.text;
                EXPECT_FALSE(lx.has_valence(w.text)) << w.text;
                EXPECT_FALSE(fw.contains(w.text)) << w.text;
                break;
        }
    }
}

TEST(SyntheticModel, StemsAreDistinct) {
    std::set<std::string> stems;
    for (const auto& w : model().words) {
        if (w.cls == SynthClass::function) continue;
        EXPECT_TRUE(stems.insert(stem(w.text)).second) << w.text;
    }
}

TEST(SyntheticModel, UnmanipulatedFeaturesAgree) {
    std::map<std::size_t, std::pair<double, double>> by_length;
    for (const auto& w : model().words) {
        auto& [c, f] = by_length[w.text.size()];
        c += w.p_credible;
        f += w.p_fake;
        if (w.cls == SynthClass::valence || w.cls == SynthClass::function) EXPECT_EQ(w.p_credible, w.p_fake) << w.text;
    }
    for (const auto& [len, m] : by_length) EXPECT_NEAR(m.first, m.second, 1e-12) << "length " << len;
}

TEST(SyntheticModel, MarkersOnlyOnFakeSide) {
    const auto markers = model().marker_words();
    ASSERT_EQ(markers.size(), 10u);
    double mass = 0;
    for (const auto& w : model().words) {
        if (w.cls != SynthClass::marker) continue;
        EXPECT_EQ(w.p_credible, 0.0);
        EXPECT_GT(w.p_fake, 0.0);
        mass += w.p_fake;
    }
    EXPECT_NEAR(mass, model().params.marker_mass, 1e-12);
}

TEST(SyntheticModel, UnreachableTargetRejected) {
    SyntheticParams p;
    p.total_variation = 0.6;
    EXPECT_THROW(build_synthetic_model(p), ConfigError);
    p.total_variation = 0.01;
    EXPECT_THROW(build_synthetic_model(p), ConfigError);
}

TEST(SyntheticCorpus, ShapeAndDeterminism) {
    SyntheticParams p;
    p.articles = 200;
    const auto m = build_synthetic_model(p);
    const auto a = generate_corpus(m, 5);
    const auto b = generate_corpus(m, 5);
    const auto c = generate_corpus(m, 6);
    ASSERT_EQ(a.size(), 200u);
    EXPECT_EQ(a.count(Label::fake), 100u);
    EXPECT_EQ(a.sources().size(), 30u);
    EXPECT_EQ(corpus_to_jsonl(a), corpus_to_jsonl(b));
    EXPECT_NE(corpus_to_jsonl(a), corpus_to_jsonl(c));
}

TEST(SyntheticCorpus, BoilerplateStripsToGeneratedText) {
    SyntheticParams p;
    p.articles = 100;
    const auto m = build_synthetic_model(p);
    const auto corpus = generate_corpus(m, 9);
    const auto patterns = parse_boilerplate_patterns(default_boilerplate_specs());
    std::set<std::string> known;
    for (const auto& w : m.words) known.insert(w.text);
    for (const auto& a : corpus.articles()) {
        const auto body = remove_boilerplate(a.body(), patterns);
        const auto tokens = tokenize(clean_text(body));
        EXPECT_GE(tokens.size(), static_cast<std::size_t>(p.min_tokens)) << a.id;
        EXPECT_LE(tokens.size(), static_cast<std::size_t>(p.max_tokens)) << a.id;
        for (const auto& t : tokens.tokens) ASSERT_TRUE(known.count(t)) << a.id << ": " << t;
    }
}
