#pragma once

// Part-of-speech, sentence sentiment, length and tone features over article
// bodies, backed by checksummed word<TAB>value lexicon files.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "textprep.hpp"

#ifndef VERACITY_LEXICON_DIR
#define VERACITY_LEXICON_DIR "data/lexicons"
#endif

namespace veracity {

enum class PosTag : std::uint8_t { noun, verb, adjective, adverb, pronoun, other };
inline constexpr std::array<PosTag, 6> kPosTags = {PosTag::noun,    PosTag::verb,    PosTag::adjective,
                                                   PosTag::adverb,  PosTag::pronoun, PosTag::other};

inline constexpr std::string_view to_string(PosTag t) {
    switch (t) {
        case PosTag::noun: return "noun";
        case PosTag::verb: return "verb";
        case PosTag::adjective: return "adjective";
        case PosTag::adverb: return "adverb";
        case PosTag::pronoun: return "pronoun";
        case PosTag::other: return "other";
    }
    return "?";
}

inline std::optional<PosTag> parse_pos_tag(std::string_view s) {
    for (auto t : kPosTags)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

enum class SentimentClass : std::uint8_t { very_negative, negative, neutral, positive, very_positive };
inline constexpr std::array<SentimentClass, 5> kSentimentClasses = {
    SentimentClass::very_negative, SentimentClass::negative, SentimentClass::neutral, SentimentClass::positive,
    SentimentClass::very_positive};

inline constexpr std::string_view to_string(SentimentClass c) {
    switch (c) {
        case SentimentClass::very_negative: return "very_negative";
        case SentimentClass::negative: return "negative";
        case SentimentClass::neutral: return "neutral";
        case SentimentClass::positive: return "positive";
        case SentimentClass::very_positive: return "very_positive";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Lexicon files

/// A parsed lexicon file. The first line is
/// `#veracity-lexicon<TAB>name<TAB>version<TAB>fnv1a64-of-body`; every other
/// line is `word<TAB>value`.
struct LexiconFile {
    std::string name;
    int version = 0;
    std::uint64_t checksum = 0;
    std::vector<std::pair<std::string, std::string>> rows;
};

inline std::string render_lexicon(std::string_view name, int version,
                                  std::span<const std::pair<std::string, std::string>> rows) {
    std::string body;
    for (const auto& [w, v] : rows) body += w + "\t" + v + "\n";
    return "#veracity-lexicon\t" + std::string(name) + "\t" + std::to_string(version) + "\t" + hex64(fnv1a(body)) +
           "\n" + body;
}

inline LexiconFile parse_lexicon(std::string_view text, std::string_view expected_name) {
    const auto nl = text.find('\n');
    const auto header = text.substr(0, nl);
    const auto fields = split(header, '\t');
    const std::string where = "lexicon '" + std::string(expected_name) + "'";
    if (fields.size() != 4 || fields[0] != "#veracity-lexicon") throw ConfigError(where + ": missing header line");
    LexiconFile lf;
    lf.name = std::string(fields[1]);
    if (lf.name != expected_name) throw ConfigError(where + ": file declares name '" + lf.name + "'");
    try {
        lf.version = parse_int<int>(fields[2]);
        lf.checksum = parse_hex64(fields[3]);
    } catch (const Error&) {
        throw ConfigError(where + ": malformed header");
    }
    const auto body = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (fnv1a(body) != lf.checksum) throw ConfigError(where + ": checksum mismatch");
    std::size_t line_no = 1;
    for (auto line : split(body, '\n')) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos || tab == 0)
            throw ConfigError(where + " line " + std::to_string(line_no) + ": expected word<TAB>value");
        lf.rows.emplace_back(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
    }
    return lf;
}

enum Category : std::uint8_t {
    cat_self = 1,
    cat_exclusive = 2,
    cat_discrepancy = 4,
    cat_article = 8,
    cat_preposition = 16,
};

inline std::optional<Category> parse_category(std::string_view s) {
    if (s == "self") return cat_self;
    if (s == "exclusive") return cat_exclusive;
    if (s == "discrepancy") return cat_discrepancy;
    if (s == "article") return cat_article;
    if (s == "preposition") return cat_preposition;
    return std::nullopt;
}

struct Lexicons {
    std::unordered_map<std::string, double> valence;
    std::unordered_map<std::string, PosTag> pos;
    std::unordered_map<std::string, std::uint8_t> categories;
    /// name -> (version, checksum), for provenance in reports.
    std::map<std::string, std::pair<int, std::uint64_t>> versions;

    double valence_of(std::string_view w) const {
        auto it = valence.find(std::string(w));
        return it == valence.end() ? 0.0 : it->second;
    }
    bool has_valence(std::string_view w) const { return valence.count(std::string(w)) > 0; }
    std::uint8_t category_mask(std::string_view w) const {
        auto it = categories.find(std::string(w));
        return it == categories.end() ? 0 : it->second;
    }

    void add(const LexiconFile& lf) {
        versions[lf.name] = {lf.version, lf.checksum};
        std::size_t i = 0;
        for (const auto& [w, v] : lf.rows) {
            ++i;
            const std::string where = "lexicon '" + lf.name + "' entry " + std::to_string(i) + " ('" + w + "')";
            if (lf.name == "valence") {
                double x;
                try {
                    x = parse_double(v);
                } catch (const Error&) {
                    throw ConfigError(where + ": value is not a number");
                }
                if (!(x >= -1.0 && x <= 1.0)) throw ConfigError(where + ": valence outside [-1,1]");
                valence[w] = x;
            } else if (lf.name == "pos") {
                auto t = parse_pos_tag(v);
                if (!t) throw ConfigError(where + ": unknown tag '" + v + "'");
                pos[w] = *t;
            } else if (lf.name == "categories") {
                auto c = parse_category(v);
                if (!c) throw ConfigError(where + ": unknown category '" + v + "'");
                categories[w] |= *c;
            } else {
                throw ConfigError("unknown lexicon '" + lf.name + "'");
            }
        }
    }

    /// Reads valence.tsv, pos.tsv and categories.tsv from `dir`.
    static Lexicons load(const std::filesystem::path& dir) {
        Lexicons lx;
        for (const char* name : {"valence", "pos", "categories"}) {
            const auto path = dir / (std::string(name) + ".tsv");
            std::string text;
            try {
                text = read_file(path);
            } catch (const Error& e) {
                throw ConfigError(std::string("cannot load lexicon: ") + e.what());
            }
            lx.add(parse_lexicon(text, name));
        }
        return lx;
    }

    /// The lexicon directory: $VERACITY_LEXICON_DIR if set, else the
    /// directory compiled in.
    static std::filesystem::path default_dir() {
        if (const char* env = std::getenv("VERACITY_LEXICON_DIR"); env && *env) return env;
        return VERACITY_LEXICON_DIR;
    }

    static const Lexicons& shipped() {
        static const Lexicons lx = load(default_dir());
        return lx;
    }
};

// ---------------------------------------------------------------------------
// Tagging

namespace linguistic_detail {

inline const std::unordered_set<std::string>& closed_pronouns() {
    static const std::unordered_set<std::string> s = {
        "i",        "me",        "my",       "mine",     "myself",   "you",      "your",       "yours",
        "yourself", "yourselves", "he",      "him",      "his",      "himself",  "she",        "her",
        "hers",     "herself",   "it",       "its",      "itself",   "we",       "us",         "our",
        "ours",     "ourselves", "they",     "them",     "their",    "theirs",   "themselves", "who",
        "whom",     "whose",     "someone",  "anyone",   "everyone", "nobody",   "somebody",   "anybody",
        "everybody", "something", "anything", "everything", "nothing"};
    return s;
}

inline const std::unordered_set<std::string>& closed_verbs() {
    static const std::unordered_set<std::string> s = {
        "be",   "am",    "is",    "are",  "was",    "were",  "been",  "being", "have",  "has",
        "had",  "having", "do",   "does", "did",    "doing", "done",  "will",  "would", "shall",
        "should", "can", "could", "may",  "might",  "must",  "ought"};
    return s;
}

inline bool ends_with(std::string_view w, std::string_view suf) {
    return w.size() > suf.size() && w.substr(w.size() - suf.size()) == suf;
}

// Lexicon lookup of a regular inflection's base form.
inline std::optional<PosTag> inflected_lookup(const Lexicons& lx, std::string_view w) {
    auto find = [&](std::string base) -> std::optional<PosTag> {
        auto it = lx.pos.find(base);
        if (it == lx.pos.end()) return std::nullopt;
        return it->second;
    };
    auto noun_or_verb = [](std::optional<PosTag> t) { return t && (*t == PosTag::noun || *t == PosTag::verb); };
    const std::string s(w);
    if (ends_with(s, "ies")) {
        if (auto t = find(s.substr(0, s.size() - 3) + "y"); noun_or_verb(t)) return t;
    }
    if (ends_with(s, "es")) {
        if (auto t = find(s.substr(0, s.size() - 2)); noun_or_verb(t)) return t;
    }
    if (ends_with(s, "s") && !ends_with(s, "ss")) {
        if (auto t = find(s.substr(0, s.size() - 1)); noun_or_verb(t)) return t;
    }
    for (std::string_view suf : {"ed", "ing"}) {
        if (!ends_with(s, suf)) continue;
        const auto stem = s.substr(0, s.size() - suf.size());
        if (noun_or_verb(find(stem)) || noun_or_verb(find(stem + "e"))) return PosTag::verb;
        if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
            noun_or_verb(find(stem.substr(0, stem.size() - 1))))
            return PosTag::verb;
    }
    return std::nullopt;
}

}  // namespace linguistic_detail

/// Tag of one lowercase unstemmed token: closed class, then the wordform
/// lexicon (exact, then regular inflections), then suffix rules, else other.
inline PosTag tag_word(std::string_view w, const Lexicons& lx = Lexicons::shipped()) {
    using namespace linguistic_detail;
    const std::string s(w);
    if (closed_pronouns().count(s)) return PosTag::pronoun;
    if (closed_verbs().count(s)) return PosTag::verb;
    if (auto it = lx.pos.find(s); it != lx.pos.end()) return it->second;
    if (auto t = inflected_lookup(lx, s)) return *t;
    if (ends_with(s, "ly")) return PosTag::adverb;
    for (std::string_view suf : {"ous", "ful", "ive"})
        if (ends_with(s, suf)) return PosTag::adjective;
    for (std::string_view suf : {"tion", "ness", "ment"})
        if (ends_with(s, suf)) return PosTag::noun;
    return PosTag::other;
}

inline std::vector<PosTag> tag_pos(const TokenStream& tokens, const Lexicons& lx = Lexicons::shipped()) {
    if (tokens.stemmed) throw DataError("tag_pos needs unstemmed tokens");
    std::vector<PosTag> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens.tokens) out.push_back(tag_word(t, lx));
    return out;
}

// ---------------------------------------------------------------------------
// Sentiment

/// Class of a mean valence: < -0.5, [-0.5,-0.1), [-0.1,0.1], (0.1,0.5], > 0.5.
inline SentimentClass sentiment_class(double mean) {
    if (mean < -0.5) return SentimentClass::very_negative;
    if (mean < -0.1) return SentimentClass::negative;
    if (mean <= 0.1) return SentimentClass::neutral;
    if (mean <= 0.5) return SentimentClass::positive;
    return SentimentClass::very_positive;
}

/// Mean valence of the lexicon words in a cleaned sentence, 0 if none match.
inline double sentence_valence(std::string_view sentence, const Lexicons& lx = Lexicons::shipped()) {
    const auto ts = tokenize(clean_text(sentence));
    double sum = 0;
    int matched = 0;
    for (const auto& t : ts.tokens) {
        if (lx.has_valence(t)) {
            sum += lx.valence_of(t);
            ++matched;
        }
    }
    return matched ? sum / matched : 0.0;
}

inline SentimentClass sentiment_of_sentence(std::string_view sentence, const Lexicons& lx = Lexicons::shipped()) {
    return sentiment_class(sentence_valence(sentence, lx));
}

// ---------------------------------------------------------------------------
// Lengths

/// Sufficient statistics for word length (characters) and sentence length
/// (tokens). Additive.
struct LengthStats {
    std::uint64_t words = 0;
    double word_sum = 0;
    double word_sq = 0;
    std::uint64_t sentences = 0;
    double sentence_sum = 0;
    double sentence_sq = 0;

    double mean_word() const { return words ? word_sum / static_cast<double>(words) : 0.0; }
    double mean_sentence() const { return sentences ? sentence_sum / static_cast<double>(sentences) : 0.0; }
    static double sample_sd(std::uint64_t n, double sum, double sq) {
        if (n < 2) return 0.0;
        const double nn = static_cast<double>(n);
        return std::sqrt(std::max(0.0, (sq - sum * sum / nn) / (nn - 1.0)));
    }
    double sd_word() const { return sample_sd(words, word_sum, word_sq); }
    double sd_sentence() const { return sample_sd(sentences, sentence_sum, sentence_sq); }

    void add_sentence(const TokenStream& ts) {
        if (ts.empty()) return;
        ++sentences;
        const auto n = static_cast<double>(ts.size());
        sentence_sum += n;
        sentence_sq += n * n;
        for (const auto& t : ts.tokens) {
            const auto l = static_cast<double>(t.size());
            ++words;
            word_sum += l;
            word_sq += l * l;
        }
    }

    void merge(const LengthStats& o) {
        words += o.words;
        word_sum += o.word_sum;
        word_sq += o.word_sq;
        sentences += o.sentences;
        sentence_sum += o.sentence_sum;
        sentence_sq += o.sentence_sq;
    }

    bool operator==(const LengthStats&) const = default;
};

/// Sentences that clean to nothing are skipped.
inline LengthStats length_stats(std::string_view doc) {
    LengthStats ls;
    for (const auto& s : sentence_split(doc)) ls.add_sentence(tokenize(clean_text(s)));
    return ls;
}

// ---------------------------------------------------------------------------
// Tone

struct ToneSummary {
    double authenticity = 50.0;
    double emotional_tone = 50.0;
    double formality = 50.0;

    bool operator==(const ToneSummary&) const = default;
};

/// Token rates that feed ToneSummary; kept so the summary can be traced.
struct ToneRates {
    std::uint64_t tokens = 0;
    double positive = 0, negative = 0;
    double self = 0, exclusive = 0, discrepancy = 0;
    double noun = 0, adjective = 0, preposition = 0, article = 0, pronoun = 0, verb = 0, adverb = 0;
};

inline ToneRates tone_rates(const TokenStream& ts, const Lexicons& lx = Lexicons::shipped()) {
    ToneRates r;
    r.tokens = ts.size();
    if (ts.empty()) return r;
    for (const auto& t : ts.tokens) {
        const double v = lx.valence_of(t);
        if (v > 0) r.positive += 1;
        if (v < 0) r.negative += 1;
        const auto m = lx.category_mask(t);
        if (m & cat_self) r.self += 1;
        if (m & cat_exclusive) r.exclusive += 1;
        if (m & cat_discrepancy) r.discrepancy += 1;
        if (m & cat_article) r.article += 1;
        if (m & cat_preposition) r.preposition += 1;
        switch (tag_word(t, lx)) {
            case PosTag::noun: r.noun += 1; break;
            case PosTag::adjective: r.adjective += 1; break;
            case PosTag::pronoun: r.pronoun += 1; break;
            case PosTag::verb: r.verb += 1; break;
            case PosTag::adverb: r.adverb += 1; break;
            case PosTag::other: break;
        }
    }
    const double n = static_cast<double>(r.tokens);
    for (double* x : {&r.positive, &r.negative, &r.self, &r.exclusive, &r.discrepancy, &r.noun, &r.adjective,
                      &r.preposition, &r.article, &r.pronoun, &r.verb, &r.adverb})
        *x /= n;
    return r;
}

inline constexpr double kToneEpsilon = 1e-9;
inline constexpr double kAuthenticityGain = 500.0;

/// emotional_tone = 50 + 50 (pos - neg) / (pos + neg + eps);
/// authenticity = 50 + 500 (self + exclusive - discrepancy);
/// formality = (noun + adj + prep + article - pronoun - verb - adverb) * 50 + 50,
/// rates as fractions of tokens. All clamped to [0, 100].
inline ToneSummary tone_from_rates(const ToneRates& r) {
    ToneSummary s;
    s.emotional_tone = std::clamp(50.0 + 50.0 * (r.positive - r.negative) / (r.positive + r.negative + kToneEpsilon),
                                  0.0, 100.0);
    s.authenticity = std::clamp(50.0 + kAuthenticityGain * (r.self + r.exclusive - r.discrepancy), 0.0, 100.0);
    s.formality = std::clamp(
        50.0 + 50.0 * (r.noun + r.adjective + r.preposition + r.article - r.pronoun - r.verb - r.adverb), 0.0,
        100.0);
    return s;
}

inline ToneSummary tone_summary(std::string_view doc, const Lexicons& lx = Lexicons::shipped()) {
    return tone_from_rates(tone_rates(tokenize(clean_text(doc)), lx));
}

// ---------------------------------------------------------------------------
// Per-article features and corpus profiles

struct ArticleFeatures {
    std::string id;
    Label label = Label::credible;
    std::array<std::uint64_t, 6> pos{};  // indexed by PosTag
    std::uint64_t tokens = 0;
    std::array<std::uint64_t, 5> sentiment{};  // sentence counts by class
    LengthStats lengths;
    ToneSummary tone;

    bool operator==(const ArticleFeatures&) const = default;
};

/// Feature path: sentence split the body, then clean and tokenize each
/// sentence.
inline ArticleFeatures extract_features(std::string id, Label label, std::string_view body,
                                        const Lexicons& lx = Lexicons::shipped()) {
    ArticleFeatures f;
    f.id = std::move(id);
    f.label = label;
    TokenStream all;
    for (const auto& s : sentence_split(body)) {
        const auto ts = tokenize(clean_text(s));
        if (ts.empty()) continue;
        f.lengths.add_sentence(ts);
        f.sentiment[static_cast<std::size_t>(sentiment_of_sentence(s, lx))] += 1;
        for (const auto& t : ts.tokens) {
            f.pos[static_cast<std::size_t>(tag_word(t, lx))] += 1;
            all.tokens.push_back(t);
        }
    }
    f.tokens = all.size();
    f.tone = tone_from_rates(tone_rates(all, lx));
    return f;
}

/// One line per article.
inline std::string features_dump_line(const ArticleFeatures& f) {
    nlohmann::ordered_json pos, senti;
    for (auto t : kPosTags) pos[std::string(to_string(t))] = f.pos[static_cast<std::size_t>(t)];
    for (auto c : kSentimentClasses) senti[std::string(to_string(c))] = f.sentiment[static_cast<std::size_t>(c)];
    nlohmann::ordered_json j;
    j["id"] = f.id;
    j["label"] = std::string(to_string(f.label));
    j["tokens"] = f.tokens;
    j["pos"] = pos;
    j["sentiment"] = senti;
    nlohmann::ordered_json len;
    len["words"] = f.lengths.words;
    len["word_sum"] = f.lengths.word_sum;
    len["word_sq"] = f.lengths.word_sq;
    len["sentences"] = f.lengths.sentences;
    len["sentence_sum"] = f.lengths.sentence_sum;
    len["sentence_sq"] = f.lengths.sentence_sq;
    j["lengths"] = len;
    nlohmann::ordered_json tone;
    tone["authenticity"] = f.tone.authenticity;
    tone["emotional_tone"] = f.tone.emotional_tone;
    tone["formality"] = f.tone.formality;
    j["tone"] = tone;
    return j.dump();
}

inline ArticleFeatures parse_features_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
        ArticleFeatures f;
        f.id = j.at("id").get<std::string>();
        auto label = parse_label(j.at("label").get<std::string>());
        if (!label) throw DataError("bad label");
        f.label = *label;
        f.tokens = j.at("tokens").get<std::uint64_t>();
        for (auto t : kPosTags) f.pos[static_cast<std::size_t>(t)] = j.at("pos").at(std::string(to_string(t))).get<std::uint64_t>();
        for (auto c : kSentimentClasses)
            f.sentiment[static_cast<std::size_t>(c)] = j.at("sentiment").at(std::string(to_string(c))).get<std::uint64_t>();
        const auto& l = j.at("lengths");
        f.lengths.words = l.at("words").get<std::uint64_t>();
        f.lengths.word_sum = l.at("word_sum").get<double>();
        f.lengths.word_sq = l.at("word_sq").get<double>();
        f.lengths.sentences = l.at("sentences").get<std::uint64_t>();
        f.lengths.sentence_sum = l.at("sentence_sum").get<double>();
        f.lengths.sentence_sq = l.at("sentence_sq").get<double>();
        const auto& t = j.at("tone");
        f.tone.authenticity = t.at("authenticity").get<double>();
        f.tone.emotional_tone = t.at("emotional_tone").get<double>();
        f.tone.formality = t.at("formality").get<double>();
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("feature line: ") + e.what());
    }
}

struct PosProfile {
    std::array<std::uint64_t, 6> counts{};
    std::uint64_t total = 0;

    std::uint64_t at(PosTag t) const { return counts[static_cast<std::size_t>(t)]; }
    bool operator==(const PosProfile&) const = default;
};

/// Aggregates for one side of the corpus. Counts and sums add; the tone
/// distributions are kept sorted so the profile does not depend on input
/// order.
struct CorpusProfile {
    Label side = Label::credible;
    std::uint64_t articles = 0;
    PosProfile pos;
    std::array<std::uint64_t, 5> sentiment{};
    LengthStats lengths;
    std::vector<double> authenticity;
    std::vector<double> emotional_tone;
    std::vector<double> formality;

    std::uint64_t sentences() const {
        std::uint64_t s = 0;
        for (auto c : sentiment) s += c;
        return s;
    }

    void add(const ArticleFeatures& f) {
        ++articles;
        for (std::size_t i = 0; i < 6; ++i) pos.counts[i] += f.pos[i];
        pos.total += f.tokens;
        for (std::size_t i = 0; i < 5; ++i) sentiment[i] += f.sentiment[i];
        lengths.merge(f.lengths);
        authenticity.push_back(f.tone.authenticity);
        emotional_tone.push_back(f.tone.emotional_tone);
        formality.push_back(f.tone.formality);
    }

    void normalize() {
        std::sort(authenticity.begin(), authenticity.end());
        std::sort(emotional_tone.begin(), emotional_tone.end());
        std::sort(formality.begin(), formality.end());
    }

    void merge(const CorpusProfile& o) {
        if (o.side != side) throw DataError("cannot merge profiles of different sides");
        articles += o.articles;
        for (std::size_t i = 0; i < 6; ++i) pos.counts[i] += o.pos.counts[i];
        pos.total += o.pos.total;
        for (std::size_t i = 0; i < 5; ++i) sentiment[i] += o.sentiment[i];
        lengths.merge(o.lengths);
        authenticity.insert(authenticity.end(), o.authenticity.begin(), o.authenticity.end());
        emotional_tone.insert(emotional_tone.end(), o.emotional_tone.begin(), o.emotional_tone.end());
        formality.insert(formality.end(), o.formality.begin(), o.formality.end());
        normalize();
    }

    bool operator==(const CorpusProfile&) const = default;
};

inline CorpusProfile corpus_profile(std::span<const ArticleFeatures> articles, Label side) {
    CorpusProfile p;
    p.side = side;
    for (const auto& a : articles)
        if (a.label == side) p.add(a);
    if (p.articles == 0) throw DataError("corpus profile: no " + std::string(to_string(side)) + " articles");
    p.normalize();
    return p;
}

}  // namespace veracity
