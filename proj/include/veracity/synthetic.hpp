#pragma once

// Two-sided synthetic news corpus with known ground truth: a credible and a
// fake unigram distribution over the same word inventory, differing by a
// calibrated total-variation distance, a fake-side adverb surplus and a set
// of fake-only marker words. Word-length, valence and sentence-length
// distributions are identical on both sides.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "corpus.hpp"
#include "linguistic.hpp"
#include "porter.hpp"
#include "vocab.hpp"

namespace veracity {

enum class SynthClass : std::uint8_t { function, valence, noun, adjective, adverb, other, marker };

inline constexpr std::string_view to_string(SynthClass c) {
    switch (c) {
        case SynthClass::function: return "function";
        case SynthClass::valence: return "valence";
        case SynthClass::noun: return "noun";
        case SynthClass::adjective: return "adjective";
        case SynthClass::adverb: return "adverb";
        case SynthClass::other: return "other";
        case SynthClass::marker: return "marker";
    }
    return "?";
}

struct SynthWord {
    std::string text;
    SynthClass cls = SynthClass::other;
    double p_credible = 0.0;
    double p_fake = 0.0;
};

struct SyntheticParams {
    std::size_t articles = 2000;
    std::size_t vocabulary = 1200;
    std::size_t markers = 10;
    std::size_t adverbs = 30;
    std::size_t nouns = 300;
    std::size_t adjectives = 150;
    double total_variation = 0.25;
    double adverb_gap = 0.40;  // relative surplus of the adverb-tag rate on the fake side
    double marker_mass = 0.07;
    double function_mass = 0.30;
    double valence_mass = 0.04;
    double adverb_mass = 0.06;
    std::size_t sources_per_label = 15;
    int min_tokens = 150;
    int max_tokens = 250;
    int min_sentence = 8;
    int max_sentence = 24;
    /// Seeds the word inventory and pairing; the corpus seed only drives
    /// sampling, so every corpus seed shares one pair of distributions.
    std::uint64_t inventory_seed = 2017;

    void validate() const {
        if (articles < 4 || articles % 2) throw ConfigError("synthetic: articles must be even and at least 4");
        if (!(total_variation > 0 && total_variation < 1)) throw ConfigError("synthetic: total_variation must be in (0,1)");
        if (!(adverb_gap >= 0)) throw ConfigError("synthetic: adverb_gap must be non-negative");
        if (!(marker_mass >= 0 && marker_mass < 0.2)) throw ConfigError("synthetic: marker_mass must be in [0,0.2)");
        if (function_mass + valence_mass + adverb_mass >= 0.9) throw ConfigError("synthetic: too little content mass");
        if (vocabulary < kFunctionCount + kValenceCount + markers + adverbs + nouns + adjectives + 10)
            throw ConfigError("synthetic: vocabulary too small for the requested word classes");
        if (min_tokens < 1 || max_tokens < min_tokens) throw ConfigError("synthetic: bad article length range");
        if (min_sentence < 1 || max_sentence < min_sentence) throw ConfigError("synthetic: bad sentence length range");
        if (sources_per_label < 1) throw ConfigError("synthetic: need at least one source per label");
    }

    static constexpr std::size_t kFunctionCount = 100;
    static constexpr std::size_t kValenceCount = 40;
};

struct SyntheticModel {
    SyntheticParams params;
    std::vector<SynthWord> words;
    double delta = 0.0;  // calibrated relative shift of paired content words

    double total_variation() const {
        double tv = 0;
        for (const auto& w : words) tv += std::abs(w.p_fake - w.p_credible);
        return 0.5 * tv;
    }

    /// Probability mass of tokens the tagger labels `tag`.
    double tag_mass(PosTag tag, Label side, const Lexicons& lx = Lexicons::shipped()) const {
        double m = 0;
        for (const auto& w : words)
            if (tag_word(w.text, lx) == tag) m += side == Label::fake ? w.p_fake : w.p_credible;
        return m;
    }

    std::vector<std::string> marker_words() const {
        std::vector<std::string> out;
        for (const auto& w : words)
            if (w.cls == SynthClass::marker) out.push_back(w.text);
        return out;
    }

    std::vector<std::string> marker_stems() const {
        std::vector<std::string> out;
        for (const auto& w : marker_words()) out.push_back(stem(w));
        return out;
    }

    /// Ground truth as JSON: parameters, delta, distance and the markers.
    std::string describe() const {
        nlohmann::ordered_json j;
        j["vocabulary"] = words.size();
        j["total_variation"] = total_variation();
        j["delta"] = delta;
        j["adverb_gap"] = params.adverb_gap;
        j["adverb_rate_credible"] = tag_mass(PosTag::adverb, Label::credible);
        j["adverb_rate_fake"] = tag_mass(PosTag::adverb, Label::fake);
        j["marker_mass"] = params.marker_mass;
        j["markers"] = marker_words();
        j["marker_stems"] = marker_stems();
        j["inventory_seed"] = params.inventory_seed;
        return j.dump(2) + "\n";
    }
};

namespace synth_detail {

inline const std::vector<std::string>& function_words() {
    static const std::vector<std::string> w = {
        "the",   "of",    "and",   "to",    "a",      "in",      "that",  "is",    "was",   "he",
        "for",   "it",    "with",  "as",    "his",    "on",      "be",    "at",    "by",    "i",
        "this",  "had",   "not",   "are",   "but",    "from",    "or",    "have",  "an",    "they",
        "which", "you",   "were",  "her",   "all",    "she",     "there", "would", "their", "we",
        "him",   "been",  "has",   "when",  "who",    "will",    "more",  "if",    "out",   "so",
        "what",  "up",    "its",   "about", "into",   "than",    "them",  "can",   "only",  "other",
        "could", "these", "may",   "then",  "do",     "any",     "my",    "now",   "such",  "our",
        "over",  "me",    "even",  "most",  "after",  "also",    "did",   "many",  "before", "must",
        "through", "where", "much", "your", "well",   "down",    "should", "because", "each", "just",
        "those", "how",   "too",   "very",  "own",    "while",   "both",  "between", "being", "under"};
    return w;
}

inline const std::vector<std::string>& valence_words() {
    // Alternating positive / negative so each half of the Zipf ladder is
    // balanced.
    static const std::vector<std::string> w = {
        "good",    "bad",     "great",   "crisis",  "happy",  "attack",  "win",     "fear",
        "support", "war",     "success", "kill",    "strong", "loss",    "safe",    "fail",
        "best",    "threat",  "free",    "risk",    "love",   "problem", "care",    "death",
        "clear",   "crime",   "fair",    "fraud",   "praise", "hurt",    "benefit", "wrong",
        "gain",    "poor",    "growth",  "angry",   "peace",  "violence", "agree",  "protest"};
    return w;
}

inline std::vector<double> zipf(std::size_t n, double offset, double total) {
    std::vector<double> p(n);
    double s = 0;
    for (std::size_t r = 0; r < n; ++r) s += p[r] = 1.0 / (static_cast<double>(r) + 1.0 + offset);
    for (auto& x : p) x *= total / s;
    return p;
}

class WordForge {
public:
    WordForge(Rng& rng, const Lexicons& lx) : rng_(rng), lx_(lx) {
        for (const auto& w : function_words()) reserve(w);
        for (const auto& w : valence_words()) reserve(w);
    }

    /// A fresh word `root + suffix` whose root has `syllables` CV pairs and
    /// an optional closing consonant, tagged `want` and with a stem no other
    /// word shares.
    std::string make(int syllables, bool closed, std::string_view suffix, PosTag want) {
        static constexpr std::string_view consonants = "bdfgklmnprtvz";
        static constexpr std::string_view vowels = "aeiou";
        static constexpr std::string_view closers = "klmnrt";
        for (int attempt = 0; attempt < 100000; ++attempt) {
            std::string w;
            for (int s = 0; s < syllables; ++s) {
                w.push_back(consonants[uniform_index(rng_, consonants.size())]);
                w.push_back(vowels[uniform_index(rng_, vowels.size())]);
            }
            if (closed) w.push_back(closers[uniform_index(rng_, closers.size())]);
            w += suffix;
            if (!acceptable(w, want)) continue;
            reserve(w);
            return w;
        }
        throw ConfigError("synthetic: could not forge enough distinct words");
    }

private:
    Rng& rng_;
    const Lexicons& lx_;
    std::set<std::string> taken_;
    std::set<std::string> stems_;

    void reserve(const std::string& w) {
        taken_.insert(w);
        stems_.insert(stem(w));
    }

    bool acceptable(const std::string& w, PosTag want) const {
        if (taken_.count(w) || stems_.count(stem(w))) return false;
        if (lx_.pos.count(w) || lx_.has_valence(w) || lx_.category_mask(w)) return false;
        if (FunctionWordList::defaults().contains(w) || FunctionWordList::defaults().contains(stem(w))) return false;
        return tag_word(w, lx_) == want;
    }
};

}  // namespace synth_detail

namespace synth_detail {

struct Plan {
    std::vector<SynthWord> words;
    // Pairs of content-word indices with the sign applied to the first.
    std::vector<std::tuple<std::size_t, std::size_t, double>> pairs;
};

// Applies the fake-side construction for a given pair shift `delta`.
inline void apply_fake(Plan& plan, const SyntheticParams& params, double delta, const Lexicons& lx) {
    auto& w = plan.words;
    for (auto& x : w) x.p_fake = x.p_credible;
    for (const auto& [a, b, sign] : plan.pairs) {
        const double s = delta * std::min(w[a].p_credible, w[b].p_credible) * sign;
        w[a].p_fake += s;
        w[b].p_fake -= s;
    }

    // Adverb surplus: raise synthetic adverbs so the adverb-tag mass grows by
    // adverb_gap, paid for by nouns of the same length.
    double tagged_adverb = 0, synth_adverb = 0;
    for (const auto& x : w) {
        if (tag_word(x.text, lx) == PosTag::adverb) tagged_adverb += x.p_credible;
        if (x.cls == SynthClass::adverb) synth_adverb += x.p_credible;
    }
    const double extra = params.adverb_gap * tagged_adverb;
    std::map<std::size_t, double> adverb_extra_by_len, marker_by_len;
    for (auto& x : w) {
        if (x.cls != SynthClass::adverb) continue;
        const double e = extra * x.p_credible / synth_adverb;
        x.p_fake += e;
        adverb_extra_by_len[x.text.size()] += e;
    }
    const double per_marker = params.markers ? params.marker_mass / static_cast<double>(params.markers) : 0.0;
    for (auto& x : w) {
        if (x.cls != SynthClass::marker) continue;
        x.p_fake = per_marker;
        marker_by_len[x.text.size()] += per_marker;
    }
    auto take = [&](SynthClass from, const std::map<std::size_t, double>& need) {
        for (const auto& [len, amount] : need) {
            double have = 0;
            for (const auto& x : w)
                if (x.cls == from && x.text.size() == len) have += x.p_fake;
            if (!(have > 2.0 * amount))
                throw ConfigError("synthetic: not enough " + std::string(to_string(from)) + " mass at length " +
                                  std::to_string(len));
            const double keep = 1.0 - amount / have;
            for (auto& x : w)
                if (x.cls == from && x.text.size() == len) x.p_fake *= keep;
        }
    };
    take(SynthClass::noun, adverb_extra_by_len);
    take(SynthClass::other, marker_by_len);
}

inline double tv_of(const std::vector<SynthWord>& w) {
    double tv = 0;
    for (const auto& x : w) tv += std::abs(x.p_fake - x.p_credible);
    return 0.5 * tv;
}

}  // namespace synth_detail

/// Builds both distributions. Deterministic in `params` (the corpus seed
/// plays no part). The pair shift is bisected until the total-variation
/// distance equals `params.total_variation`.
inline SyntheticModel build_synthetic_model(const SyntheticParams& params, const Lexicons& lx = Lexicons::shipped()) {
    using namespace synth_detail;
    params.validate();
    Rng rng(params.inventory_seed);
    WordForge forge(rng, lx);
    Plan plan;
    auto& words = plan.words;

    const auto fw = zipf(SyntheticParams::kFunctionCount, 1.0, params.function_mass);
    for (std::size_t i = 0; i < fw.size(); ++i) words.push_back({function_words()[i], SynthClass::function, fw[i], 0});
    const auto vw = zipf(SyntheticParams::kValenceCount, 5.0, params.valence_mass);
    for (std::size_t i = 0; i < vw.size(); ++i) words.push_back({valence_words()[i], SynthClass::valence, vw[i], 0});

    // Adverbs are 8-11 letters, the same lengths as the nouns they borrow
    // mass from.
    const auto aw = zipf(params.adverbs, 5.0, params.adverb_mass);
    for (std::size_t i = 0; i < params.adverbs; ++i) {
        const int syl = 3 + static_cast<int>(i % 2);
        const bool closed = (i / 2) % 2;
        words.push_back({forge.make(syl, closed, "ly", PosTag::adverb), SynthClass::adverb, aw[i], 0});
    }

    static constexpr std::array<std::string_view, 3> noun_suffix = {"tion", "ness", "ment"};
    static constexpr std::array<std::string_view, 3> adj_suffix = {"ous", "ful", "ive"};
    std::vector<std::size_t> content;
    for (std::size_t i = 0; i < params.nouns; ++i) {
        content.push_back(words.size());
        words.push_back({forge.make(2 + static_cast<int>(i % 2), (i / 2) % 2, noun_suffix[i % 3], PosTag::noun),
                         SynthClass::noun, 0, 0});
    }
    for (std::size_t i = 0; i < params.adjectives; ++i) {
        content.push_back(words.size());
        words.push_back({forge.make(2 + static_cast<int>(i % 2), (i / 2) % 2, adj_suffix[i % 3], PosTag::adjective),
                         SynthClass::adjective, 0, 0});
    }
    const std::size_t others = params.vocabulary - SyntheticParams::kFunctionCount - SyntheticParams::kValenceCount -
                               params.adverbs - params.nouns - params.adjectives - params.markers;
    for (std::size_t i = 0; i < others; ++i) {
        content.push_back(words.size());
        words.push_back(
            {forge.make(2 + static_cast<int>(i % 3), (i / 3) % 2, "", PosTag::other), SynthClass::other, 0, 0});
    }
    // Markers are 5-8 letters; "other" words of those lengths cover them.
    static constexpr std::array<std::pair<int, bool>, 4> marker_shapes = {{{2, true}, {3, false}, {3, true}, {4, false}}};
    for (std::size_t i = 0; i < params.markers; ++i) {
        const auto [syl, closed] = marker_shapes[i % marker_shapes.size()];
        words.push_back({forge.make(syl, closed, "", PosTag::other), SynthClass::marker, 0, 0});
    }

    // Content masses: one Zipf ladder over a shuffled rank order.
    const double content_mass = 1.0 - params.function_mass - params.valence_mass - params.adverb_mass;
    auto ranks = content;
    shuffle(ranks.begin(), ranks.end(), rng);
    const auto cw = zipf(ranks.size(), 10.0, content_mass);
    for (std::size_t r = 0; r < ranks.size(); ++r) words[ranks[r]].p_credible = cw[r];

    // Pair content words of the same class and length, neighbours in mass.
    std::map<std::pair<SynthClass, std::size_t>, std::vector<std::size_t>> groups;
    for (auto i : content) groups[{words[i].cls, words[i].text.size()}].push_back(i);
    for (auto& [key, idx] : groups) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (words[a].p_credible != words[b].p_credible) return words[a].p_credible > words[b].p_credible;
            return words[a].text < words[b].text;
        });
        for (std::size_t k = 0; k + 1 < idx.size(); k += 2)
            plan.pairs.emplace_back(idx[k], idx[k + 1], uniform_index(rng, 2) ? 1.0 : -1.0);
    }

    double lo = 0.0, hi = 0.95;
    apply_fake(plan, params, lo, lx);
    if (tv_of(words) > params.total_variation)
        throw ConfigError("synthetic: markers and adverb gap alone exceed the requested total variation");
    apply_fake(plan, params, hi, lx);
    if (tv_of(words) < params.total_variation)
        throw ConfigError("synthetic: requested total variation is out of reach");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        apply_fake(plan, params, mid, lx);
        (tv_of(words) < params.total_variation ? lo : hi) = mid;
    }
    apply_fake(plan, params, hi, lx);

    SyntheticModel m;
    m.params = params;
    m.delta = hi;
    m.words = std::move(words);
    return m;
}

namespace synth_detail {

class Sampler {
public:
    explicit Sampler(const std::vector<double>& p) : cdf_(p.size()) {
        double s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) cdf_[i] = s += p[i];
        for (auto& c : cdf_) c /= s;
        cdf_.back() = 1.0;
    }
    std::size_t operator()(Rng& rng) const {
        const double u = uniform01(rng);
        return static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

inline int uniform_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline std::string date_of_day(int day) {
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int m = 0;
    while (day >= days[m]) day -= days[m++];
    char buf[32];
    std::snprintf(buf, sizeof buf, "2017-%02d-%02d", m + 1, day + 1);
    return buf;
}

}  // namespace synth_detail

/// Samples `params.articles` HTML articles, alternating credible and fake,
/// with wire-style datelines, bylines and credits on both sides alike.
inline Corpus generate_corpus(const SyntheticModel& model, std::uint64_t seed) {
    using namespace synth_detail;
    const auto& p = model.params;
    std::vector<double> pc, pf;
    for (const auto& w : model.words) {
        pc.push_back(w.p_credible);
        pf.push_back(w.p_fake);
    }
    const Sampler credible(pc), fake(pf);
    static const std::vector<std::string> cities = {"WASHINGTON", "NEW YORK", "LONDON", "CHICAGO", "DENVER", "BOSTON"};
    static const std::vector<std::string> agencies = {"Reuters", "AP", "AFP"};
    static const std::vector<std::string> first = {"John", "Maria", "David", "Sarah", "Ahmed", "Laura", "Kevin", "Nina"};
    static const std::vector<std::string> last = {"Smith", "Garcia", "Chen", "Novak", "Okafor", "Brennan", "Ito"};
    auto name = [&](Rng& rng) { return first[uniform_index(rng, first.size())] + " " + last[uniform_index(rng, last.size())]; };

    Rng rng(seed);
    std::vector<ArticleRecord> articles;
    articles.reserve(p.articles);
    for (std::size_t i = 0; i < p.articles; ++i) {
        const Label label = i % 2 ? Label::fake : Label::credible;
        const auto& sampler = label == Label::fake ? fake : credible;
        char idbuf[32];
        std::snprintf(idbuf, sizeof idbuf, "syn-%06zu", i + 1);
        char srcbuf[32];
        std::snprintf(srcbuf, sizeof srcbuf, "%s-%02zu", label == Label::fake ? "fake" : "credible",
                      (i / 2) % p.sources_per_label + 1);

        int remaining = uniform_int(rng, p.min_tokens, p.max_tokens);
        std::vector<std::string> sentences;
        while (remaining > 0) {
            const int len = std::min(remaining, uniform_int(rng, p.min_sentence, p.max_sentence));
            remaining -= len;
            std::string s;
            for (int t = 0; t < len; ++t) {
                std::string word = model.words[sampler(rng)].text;
                if (t == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
                if (t) s += ' ';
                s += word;
                if (t + 1 < len && uniform_index(rng, 10) == 0) s += ',';
            }
            const auto end = uniform_index(rng, 20);
            s += end == 0 ? "?" : end == 1 ? "!" : ".";
            sentences.push_back(std::move(s));
        }

        std::string html = "<html><head><title>Story " + std::string(idbuf) +
                           "</title></head><body><div class=\"nav\">Home | World | Politics</div>\n";
        if (uniform_index(rng, 5) < 2) html += "<p>By " + name(rng) + "</p>\n";
        const bool dateline = uniform_index(rng, 2);
        std::size_t k = 0;
        bool first_par = true;
        while (k < sentences.size()) {
            const auto take = std::min<std::size_t>(sentences.size() - k, 2 + uniform_index(rng, 3));
            html += "<p>";
            if (first_par && dateline)
                html += cities[uniform_index(rng, cities.size())] + " (" + agencies[uniform_index(rng, agencies.size())] +
                        ") - ";
            for (std::size_t s = 0; s < take; ++s) {
                if (s) html += ' ';
                html += sentences[k + s];
            }
            html += "</p>\n";
            k += take;
            first_par = false;
        }
        if (uniform_index(rng, 10) < 3) html += "<p>Reporting by " + name(rng) + "; Editing by " + name(rng) + "</p>\n";
        html += "<div class=\"footer\">Copyright 2017</div></body></html>\n";

        ArticleRecord a;
        a.id = idbuf;
        a.source_id = srcbuf;
        a.url = "https://" + std::string(srcbuf) + ".example/" + idbuf;
        a.label = label;
        a.published_at = date_of_day(static_cast<int>(uniform_index(rng, 365)));
        a.raw_html = std::move(html);
        articles.push_back(std::move(a));
    }
    return Corpus(std::move(articles));
}

}  // namespace veracity
