#pragma once

// End-to-end run: configuration, in-memory stage functions, and the
// file-backed stages the CLI drives.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "classifier.hpp"
#include "corpus.hpp"
#include "features.hpp"
#include "linguistic.hpp"
#include "selection.hpp"
#include "stats.hpp"
#include "textprep.hpp"
#include "vocab.hpp"

namespace veracity {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

/// Flat `key = value` run configuration. `#` starts a comment line.
struct RunConfig {
    std::string corpus;
    std::string format = "jsonl";
    std::vector<int> words = {90};
    std::optional<int> min_freq;
    int cap = 1000;
    double variance_retained = 0.95;
    bool reduce = true;
    VectorMode vector_mode = VectorMode::count;
    SplitFractions fractions;
    std::optional<std::uint64_t> seed;
    std::string zoo = "default";
    std::string out = "out";
    std::string boilerplate = "default";  // default | none | pattern file
    std::string stopwords = "default";    // default | word list file
    std::string lexicons = "default";     // default | lexicon directory
    std::string replacements;             // optional patch file
    int top_words = 20;
    bool strip_urls = true;
    bool count_raw_words = false;

    static RunConfig parse(std::string_view text, const fs::path& base = {}) {
        RunConfig c;
        std::map<std::string, std::string> seen;
        std::size_t line_no = 0;
        for (auto line : split(text, '\n')) {
            ++line_no;
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (!seen.emplace(key, value).second) throw ConfigError("config key '" + key + "' given twice");
            c.set(key, value, base);
        }
        return c;
    }

    static RunConfig load(const fs::path& path) {
        if (!fs::exists(path)) throw ConfigError("config file '" + path.string() + "' not found");
        return parse(read_file(path), path.parent_path());
    }

    void set(const std::string& key, const std::string& value, const fs::path& base = {}) {
        auto path_of = [&](const std::string& v) {
            if (v.empty() || v == "default" || v == "none") return v;
            fs::path p(v);
            return (p.is_relative() && !base.empty() ? base / p : p).lexically_normal().string();
        };
        auto boolean = [&](const std::string& v) {
            if (v == "true" || v == "1" || v == "yes") return true;
            if (v == "false" || v == "0" || v == "no") return false;
            throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
        };
        try {
            if (key == "corpus") corpus = path_of(value);
            else if (key == "format") format = value;
            else if (key == "words") {
                words.clear();
                for (auto w : split(value, ',')) words.push_back(parse_int<int>(trim(w)));
            } else if (key == "min_freq") {
                if (value.empty()) min_freq.reset();
                else min_freq = parse_int<int>(value);
            } else if (key == "cap") cap = parse_int<int>(value);
            else if (key == "variance_retained") variance_retained = parse_double(value);
            else if (key == "reduce") reduce = boolean(value);
            else if (key == "vector_mode") {
                auto m = parse_vector_mode(value);
                if (!m) throw ConfigError("vector_mode must be count or tfidf, got '" + value + "'");
                vector_mode = *m;
            } else if (key == "split") {
                auto f = split(value, ',');
                if (f.size() != 3) throw ConfigError("split takes three fractions: train,validation,test");
                fractions = {parse_double(trim(f[0])), parse_double(trim(f[1])), parse_double(trim(f[2]))};
            } else if (key == "seed") seed = parse_int<std::uint64_t>(value);
            else if (key == "zoo") zoo = value;
            else if (key == "out") out = path_of(value);
            else if (key == "boilerplate") boilerplate = path_of(value);
            else if (key == "stopwords") stopwords = path_of(value);
            else if (key == "lexicons") lexicons = path_of(value);
            else if (key == "replacements") replacements = path_of(value);
            else if (key == "top_words") top_words = parse_int<int>(value);
            else if (key == "strip_urls") strip_urls = boolean(value);
            else if (key == "count_raw_words") count_raw_words = boolean(value);
            else throw ConfigError("unknown config key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }

    std::uint64_t seed_value() const {
        if (!seed) throw ConfigError("seed is mandatory: set 'seed' in the config or pass --seed");
        return *seed;
    }

    int min_freq_for(int x) const { return min_freq ? *min_freq : min_frequency_for(x); }

    void validate() const {
        seed_value();
        if (words.empty()) throw ConfigError("words: at least one word count is required");
        for (int x : words) {
            if (x <= 0) throw ConfigError("words: X must be positive, got " + std::to_string(x));
            if (std::count(words.begin(), words.end(), x) > 1) throw ConfigError("words: X=" + std::to_string(x) + " listed twice");
            min_freq_for(x);
        }
        if (min_freq && *min_freq < 1) throw ConfigError("min_freq must be at least 1");
        if (cap <= 0) throw ConfigError("cap must be positive");
        if (!(variance_retained > 0.0 && variance_retained <= 1.0)) throw ConfigError("variance_retained must lie in (0,1]");
        fractions.validate();
        if (!parse_corpus_format(format)) throw ConfigError("format must be jsonl, csv or directory, got '" + format + "'");
        if (top_words <= 0) throw ConfigError("top_words must be positive");
        if (out.empty()) throw ConfigError("out must name a directory");
        zoo_specs();
    }

    std::vector<ClassifierSpec> zoo_specs() const {
        auto z = zoo == "default" ? default_zoo(seed_value()) : parse_zoo(zoo, seed_value());
        if (z.size() < 3) throw ConfigError("zoo needs at least 3 specs, got " + std::to_string(z.size()));
        return z;
    }

    TrainOptions train_options() const { return {reduce, variance_retained}; }

    PrepConfig prep_config(int x) const { return {x, strip_urls, count_raw_words}; }

    /// Every key in fixed order.
    std::string serialize() const {
        std::string w;
        for (std::size_t i = 0; i < words.size(); ++i) w += (i ? "," : "") + std::to_string(words[i]);
        std::string s;
        auto put = [&](std::string_view k, const std::string& v) { s += std::string(k) + " = " + v + "\n"; };
        put("corpus", corpus);
        put("format", format);
        put("words", w);
        put("min_freq", min_freq ? std::to_string(*min_freq) : "");
        put("cap", std::to_string(cap));
        put("variance_retained", format_double(variance_retained));
        put("reduce", reduce ? "true" : "false");
        put("vector_mode", std::string(to_string(vector_mode)));
        put("split", format_double(fractions.train) + "," + format_double(fractions.validation) + "," + format_double(fractions.test));
        put("seed", seed ? std::to_string(*seed) : "");
        put("zoo", zoo);
        put("out", out);
        put("boilerplate", boilerplate);
        put("stopwords", stopwords);
        put("lexicons", lexicons);
        put("replacements", replacements);
        put("top_words", std::to_string(top_words));
        put("strip_urls", strip_urls ? "true" : "false");
        put("count_raw_words", count_raw_words ? "true" : "false");
        return s;
    }

    std::vector<BoilerplatePattern> patterns() const {
        if (boilerplate == "none") return {};
        if (boilerplate == "default" || boilerplate.empty()) return parse_boilerplate_patterns(default_boilerplate_specs());
        return load_boilerplate_patterns(boilerplate);
    }

    FunctionWordList function_words() const {
        if (stopwords == "default" || stopwords.empty()) return FunctionWordList::defaults();
        return FunctionWordList::load(stopwords);
    }

    Lexicons lexicon_set() const {
        if (lexicons == "default" || lexicons.empty()) return Lexicons::shipped();
        return Lexicons::load(lexicons);
    }
};

// ---------------------------------------------------------------------------
// In-memory stages

/// Article body with boilerplate lines removed.
inline std::string article_text(const ArticleRecord& a, std::span<const BoilerplatePattern> patterns) {
    return remove_boilerplate(a.body(), patterns);
}

inline std::vector<PreparedDoc> prepare_corpus(const Corpus& corpus, std::span<const BoilerplatePattern> patterns,
                                               const PrepConfig& cfg) {
    std::vector<PreparedDoc> docs;
    docs.reserve(corpus.size());
    for (const auto& a : corpus.articles()) docs.push_back({a.id, prepare_tokens(article_text(a, patterns), cfg)});
    return docs;
}

/// Prepared documents grouped by split, in corpus order, with labels.
struct SplitDocs {
    std::array<std::vector<const PreparedDoc*>, 3> docs;
    std::array<std::vector<Label>, 3> labels;

    const std::vector<const PreparedDoc*>& of(Split s) const { return docs[static_cast<std::size_t>(s)]; }

    std::vector<TokenStream> streams(Split s) const {
        std::vector<TokenStream> out;
        for (const auto* d : of(s)) out.push_back(d->tokens);
        return out;
    }
};

/// Holds pointers into `docs`, which must outlive the result.
inline SplitDocs group_by_split(const Corpus& corpus, const std::vector<PreparedDoc>& docs, const SplitAssignment& split) {
    std::unordered_map<std::string, Label> label;
    for (const auto& a : corpus.articles()) label.emplace(a.id, a.label);
    SplitDocs g;
    for (const auto& d : docs) {
        auto it = label.find(d.id);
        if (it == label.end()) throw DataError("prepared document '" + d.id + "' is not in the corpus");
        const auto s = static_cast<std::size_t>(split.at(d.id));
        g.docs[s].push_back(&d);
        g.labels[s].push_back(it->second);
    }
    if (g.docs[0].empty()) throw DataError("training split is empty");
    return g;
}

SplitDocs group_by_split(const Corpus&, std::vector<PreparedDoc>&&, const SplitAssignment&) = delete;

inline Vocabulary build_vocabulary(const SplitDocs& g, int min_freq, int cap, const FunctionWordList& stopwords) {
    const auto train = g.streams(Split::train);
    return build_list_b(build_list_a(train), min_freq, stopwords, cap);
}

struct SplitMatrices {
    FeatureMatrix train, validation, test;

    const FeatureMatrix& of(Split s) const {
        return s == Split::train ? train : s == Split::validation ? validation : test;
    }
};

inline SplitMatrices build_matrices(const SplitDocs& g, const Vocabulary& vocab, VectorMode mode) {
    std::optional<DocumentFrequencies> df;
    if (mode == VectorMode::tfidf) df = document_frequencies(g.streams(Split::train), vocab);
    const Vectorizer vec(vocab, mode, df);
    auto matrix = [&](Split s) {
        std::vector<FeatureVector> rows;
        for (const auto* d : g.of(s)) rows.push_back(vec(d->id, d->tokens));
        auto m = FeatureMatrix::from_vectors(rows, g.labels[static_cast<std::size_t>(s)]);
        if (rows.empty()) {
            m.values.resize(0, static_cast<Eigen::Index>(vocab.size()));
            m.words = vocab.params().words;
            m.fingerprint = vec.fingerprint();
        }
        return m;
    };
    return {matrix(Split::train), matrix(Split::validation), matrix(Split::test)};
}

/// Everything the classification path produces for one word count.
struct WordCountRun {
    int words = 0;
    Vocabulary vocab;
    std::vector<Candidate> candidates;
    std::vector<std::optional<TrainedClassifier>> models;  // indexed by zoo position; finalists only
    WordCountSelection selection;
};

/// Indices of the validation top-k among trained candidates.
inline std::vector<std::size_t> top_indices(const std::vector<Candidate>& cands, std::size_t k = 3) {
    std::vector<std::size_t> out;
    for (const auto& c : rank_candidates(cands)) {
        if (!c.ok() || out.size() == k) break;
        out.push_back(c.index);
    }
    return out;
}

inline WordCountRun run_word_count(const RunConfig& cfg, int x, const Corpus& corpus, const SplitAssignment& split,
                                   const std::vector<BoilerplatePattern>& patterns, const FunctionWordList& stopwords) {
    WordCountRun r;
    r.words = x;
    const auto docs = prepare_corpus(corpus, patterns, cfg.prep_config(x));
    const auto g = group_by_split(corpus, docs, split);
    r.vocab = build_vocabulary(g, cfg.min_freq_for(x), cfg.cap, stopwords);
    const auto m = build_matrices(g, r.vocab, cfg.vector_mode);
    r.candidates = train_candidates(cfg.zoo_specs(), m.train, m.validation, cfg.train_options(), &r.models);
    const auto keep = top_indices(r.candidates);
    for (std::size_t i = 0; i < r.models.size(); ++i) {
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) r.models[i].reset();
    }
    r.selection = select_finalists(x, r.candidates, [&](const Candidate& c) { return evaluate(*r.models[c.index], m.test); });
    return r;
}

// ---------------------------------------------------------------------------
// Feature analysis

struct AnalysisResult {
    std::vector<ArticleFeatures> features;
    CorpusProfile fake, credible;
    std::vector<StatRow> rows;
    std::vector<std::string> notes;
    std::vector<InfluentialWord> influential;
    int vocab_words = 0;

    const StatRow* find(std::string_view feature) const {
        for (const auto& r : rows)
            if (r.feature == feature) return &r;
        return nullptr;
    }
};

namespace pipeline_detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

/// Integer-binned scores of the two sides as a 2 x bins table, empty bins dropped.
inline ContingencyTable binned_table(const std::vector<double>& a, const std::vector<double>& b) {
    std::map<long, std::pair<double, double>> bins;
    for (double x : a) bins[static_cast<long>(std::floor(x))].first += 1;
    for (double x : b) bins[static_cast<long>(std::floor(x))].second += 1;
    ContingencyTable t(2);
    for (const auto& [bin, c] : bins) {
        t[0].push_back(c.first);
        t[1].push_back(c.second);
    }
    return t;
}

}  // namespace pipeline_detail

/// Side 1 is fake, side 2 credible, in every test.
inline AnalysisResult analyze_corpus(const Corpus& corpus, std::span<const BoilerplatePattern> patterns,
                                     const Vocabulary& vocab, const Lexicons& lx, std::size_t top_k = 20) {
    using namespace pipeline_detail;
    AnalysisResult res;
    res.vocab_words = vocab.params().words;
    WordCounts counts_fake, counts_credible;
    std::vector<double> list_b_fake, list_b_credible;
    for (const auto& a : corpus.articles()) {
        const auto body = article_text(a, patterns);
        res.features.push_back(extract_features(a.id, a.label, body, lx));
        const auto stems = stem_tokens(tokenize(clean_text(body)));
        double in_b = 0;
        for (const auto& t : stems.tokens)
            if (vocab.index_of(t)) ++in_b;
        auto& wc = a.label == Label::fake ? counts_fake : counts_credible;
        wc.add(stems);
        (a.label == Label::fake ? list_b_fake : list_b_credible).push_back(in_b);
    }
    res.fake = corpus_profile(res.features, Label::fake);
    res.credible = corpus_profile(res.features, Label::credible);
    const auto& f = res.fake;
    const auto& c = res.credible;

    auto attempt = [&](const std::string& name, auto&& test) {
        try {
            res.rows.push_back({name, test()});
        } catch (const DataError& e) {
            res.notes.push_back(name + " skipped: " + e.what());
        }
    };

    for (PosTag t : kPosTags) {
        if (t == PosTag::other) continue;
        attempt("pos." + std::string(to_string(t)),
                [&] { return two_proportion_z(f.pos.at(t), f.pos.total, c.pos.at(t), c.pos.total); });
    }
    for (std::size_t i = 0; i < kSentimentClasses.size(); ++i) {
        attempt("sentiment." + std::string(to_string(kSentimentClasses[i])),
                [&] { return two_proportion_z(f.sentiment[i], f.sentences(), c.sentiment[i], c.sentences()); });
    }
    attempt("length.word", [&] {
        return two_sample_z(f.lengths.mean_word(), f.lengths.sd_word(), static_cast<double>(f.lengths.words),
                            c.lengths.mean_word(), c.lengths.sd_word(), static_cast<double>(c.lengths.words));
    });
    attempt("length.sentence", [&] {
        return two_sample_z(f.lengths.mean_sentence(), f.lengths.sd_sentence(), static_cast<double>(f.lengths.sentences),
                            c.lengths.mean_sentence(), c.lengths.sd_sentence(), static_cast<double>(c.lengths.sentences));
    });
    const std::pair<const char*, std::pair<const std::vector<double>*, const std::vector<double>*>> tones[] = {
        {"authenticity", {&f.authenticity, &c.authenticity}},
        {"emotional_tone", {&f.emotional_tone, &c.emotional_tone}},
    };
    for (const auto& [name, sides] : tones) {
        const auto* a = sides.first;
        const auto* b = sides.second;
        attempt(std::string("tone.") + name + ".z", [&] {
            return two_sample_z(mean_of(*a), sd_of(*a), static_cast<double>(a->size()), mean_of(*b), sd_of(*b),
                                static_cast<double>(b->size()));
        });
        attempt(std::string("tone.") + name + ".chi2", [&] { return chi_square_independence(binned_table(*a, *b)); });
    }
    attempt("words.chi2", [&] {
        ContingencyTable t(2);
        for (const auto& e : vocab.entries()) {
            const double x = static_cast<double>(counts_fake.at(e.stem)), y = static_cast<double>(counts_credible.at(e.stem));
            if (x + y == 0) continue;
            t[0].push_back(x);
            t[1].push_back(y);
        }
        return chi_square_independence(t);
    });
    attempt("words.list_b_tokens.z", [&] {
        return two_sample_z(mean_of(list_b_fake), sd_of(list_b_fake), static_cast<double>(list_b_fake.size()),
                            mean_of(list_b_credible), sd_of(list_b_credible), static_cast<double>(list_b_credible.size()));
    });
    res.influential = influential_words(vocab, counts_fake, counts_credible, top_k);
    return res;
}

inline std::string render_influential_csv(const std::vector<InfluentialWord>& words) {
    std::string out = "rank,word,statistic,p,count_fake,count_credible\n";
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        out += std::to_string(i + 1) + ',' + w.word + ',' + format_double(w.statistic) + ',' + format_double(w.p_value) +
               ',' + std::to_string(w.count1) + ',' + std::to_string(w.count2) + '\n';
    }
    return out;
}

inline std::string render_features_dump(const std::vector<ArticleFeatures>& features) {
    std::string out;
    for (const auto& f : features) out += features_dump_line(f) + "\n";
    return out;
}

inline nlohmann::ordered_json analysis_json(const AnalysisResult& r) {
    nlohmann::ordered_json j;
    j["vocab_words"] = r.vocab_words;
    for (const auto* p : {&r.fake, &r.credible}) {
        nlohmann::ordered_json s;
        s["articles"] = p->articles;
        s["tokens"] = p->pos.total;
        for (PosTag t : kPosTags) s["pos_rate"][std::string(to_string(t))] = p->pos.total ? static_cast<double>(p->pos.at(t)) / static_cast<double>(p->pos.total) : 0.0;
        s["sentences"] = p->sentences();
        for (std::size_t i = 0; i < 5; ++i) s["sentiment"][std::string(to_string(kSentimentClasses[i]))] = p->sentiment[i];
        s["mean_word_length"] = p->lengths.mean_word();
        s["sd_word_length"] = p->lengths.sd_word();
        s["mean_sentence_length"] = p->lengths.mean_sentence();
        s["sd_sentence_length"] = p->lengths.sd_sentence();
        s["mean_authenticity"] = pipeline_detail::mean_of(p->authenticity);
        s["mean_emotional_tone"] = pipeline_detail::mean_of(p->emotional_tone);
        s["mean_formality"] = pipeline_detail::mean_of(p->formality);
        j[std::string(to_string(p->side))] = std::move(s);
    }
    j["notes"] = r.notes;
    return j;
}

// ---------------------------------------------------------------------------
// Report

namespace pipeline_detail {

inline std::vector<std::vector<std::string>> read_csv_rows(const fs::path& p) {
    auto rows = corpus_detail::parse_csv(read_file(p));
    if (!rows.empty()) rows.erase(rows.begin());
    return rows;
}

inline std::string pct(double x) { return format_fixed(100 * x, 1); }

}  // namespace pipeline_detail

/// Markdown report from stored artifacts only.
inline std::string render_report(const std::string& config_text, const std::string& leaderboard_csv,
                                 const nlohmann::json& selection, const std::string& stats_csv,
                                 const std::string& influential_csv, const nlohmann::json& analysis) {
    using pipeline_detail::pct;
    std::string md = "# Veracity run report\n\n## Configuration\n\n```\n" + config_text + "```\n\n";
    md += "## Classification by number of words\n\n| Words | Model | Recall (%) | F1 (%) | Accuracy (%) |\n|---|---|---|---|---|\n";
    auto lb = corpus_detail::parse_csv(leaderboard_csv);
    for (std::size_t i = 1; i < lb.size(); ++i) {
        if (lb[i].size() != 5) throw DataError("leaderboard.csv row " + std::to_string(i + 1) + " is malformed");
        md += "| " + lb[i][0] + " | " + lb[i][1] + " | " + lb[i][2] + " | " + lb[i][3] + " | " + lb[i][4] + " |\n";
    }
    md += "\n";
    for (const auto& x : selection.at("per_words")) {
        md += "- X=" + std::to_string(x.at("words").get<int>()) + ": winner `" + x.at("winner").get<std::string>() + "`";
        for (const auto& f : x.at("finalists")) {
            if (f.at("spec") == x.at("winner")) {
                const auto& t = f.at("test");
                md += ", fake-class accuracy " + pct(t.at("fake_accuracy").get<double>()) + "%, credible-class accuracy " +
                      pct(t.at("credible_accuracy").get<double>()) + "%";
            }
        }
        std::size_t failed = 0;
        for (const auto& e : x.at("leaderboard")) failed += e.contains("error");
        if (failed) md += " (" + std::to_string(failed) + " specs failed to train)";
        md += "\n";
    }
    const auto& w = selection.at("winner");
    md += "\nOverall winner: `" + w.at("spec").get<std::string>() + "` at X=" + std::to_string(w.at("words").get<int>()) +
          " with test accuracy " + pct(w.at("test").at("accuracy").get<double>()) + "%.\n\n";

    md += "## Linguistic features (fake vs credible)\n\n| Feature | Statistic | df | p |\n|---|---|---|---|\n";
    auto st = corpus_detail::parse_csv(stats_csv);
    for (std::size_t i = 1; i < st.size(); ++i) {
        if (st[i].size() != 4) throw DataError("stats.csv row " + std::to_string(i + 1) + " is malformed");
        md += "| " + st[i][0] + " | " + format_fixed(parse_double(st[i][1]), 3) + " | " + st[i][2] + " | " +
              format_fixed(parse_double(st[i][3]), 4) + " |\n";
    }
    md += "\n| Side | Articles | Adverb rate | Mean word length | Mean sentence length | Authenticity | Emotional tone |\n"
          "|---|---|---|---|---|---|---|\n";
    for (const char* side : {"fake", "credible"}) {
        const auto& s = analysis.at(side);
        md += std::string("| ") + side + " | " + std::to_string(s.at("articles").get<std::uint64_t>()) + " | " +
              format_fixed(s.at("pos_rate").at("adverb").get<double>(), 4) + " | " +
              format_fixed(s.at("mean_word_length").get<double>(), 3) + " | " +
              format_fixed(s.at("mean_sentence_length").get<double>(), 3) + " | " +
              format_fixed(s.at("mean_authenticity").get<double>(), 2) + " | " +
              format_fixed(s.at("mean_emotional_tone").get<double>(), 2) + " |\n";
    }
    if (!analysis.at("notes").empty()) {
        md += "\nSkipped tests:\n\n";
        for (const auto& n : analysis.at("notes")) md += "- " + n.get<std::string>() + "\n";
    }
    md += "\n## Most influential words\n\n| Rank | Word | z | p | Fake | Credible |\n|---|---|---|---|---|---|\n";
    auto iw = corpus_detail::parse_csv(influential_csv);
    for (std::size_t i = 1; i < iw.size(); ++i) {
        if (iw[i].size() != 6) throw DataError("influential.csv row " + std::to_string(i + 1) + " is malformed");
        md += "| " + iw[i][0] + " | " + iw[i][1] + " | " + format_fixed(parse_double(iw[i][2]), 3) + " | " +
              format_fixed(parse_double(iw[i][3]), 4) + " | " + iw[i][4] + " | " + iw[i][5] + " |\n";
    }
    return md;
}

// ---------------------------------------------------------------------------
// File-backed stages

/// Artifact layout of an output directory.
struct Workspace {
    fs::path dir;

    fs::path config() const { return dir / "config.txt"; }
    fs::path corpus() const { return dir / "corpus.jsonl"; }
    fs::path split() const { return dir / "split.csv"; }
    fs::path prep(int x) const { return dir / ("prep_" + std::to_string(x) + ".tsv"); }
    fs::path vocab(int x) const { return dir / ("vocab_" + std::to_string(x) + ".csv"); }
    fs::path candidates(int x) const { return dir / ("candidates_" + std::to_string(x) + ".json"); }
    fs::path models(int x) const { return dir / ("models_" + std::to_string(x)); }
    fs::path model(int x, std::size_t index) const {
        char name[32];
        std::snprintf(name, sizeof name, "spec_%02zu.model", index);
        return models(x) / name;
    }
    fs::path leaderboard() const { return dir / "leaderboard.csv"; }
    fs::path selection() const { return dir / "selection.json"; }
    fs::path evaluation() const { return dir / "evaluation.json"; }
    fs::path features() const { return dir / "features.jsonl"; }
    fs::path stats() const { return dir / "stats.csv"; }
    fs::path influential() const { return dir / "influential.csv"; }
    fs::path analysis() const { return dir / "analysis.json"; }
    fs::path report() const { return dir / "report.md"; }

    /// Contents of an upstream artifact; a missing one names the command
    /// that produces it.
    static std::string require(const fs::path& p, std::string_view command) {
        if (!fs::exists(p))
            throw DataError("missing " + p.filename().string() + " in " + p.parent_path().string() + ": run `veracity " +
                            std::string(command) + "` first");
        return read_file(p);
    }
};

class Pipeline {
public:
    explicit Pipeline(RunConfig cfg) : cfg_(std::move(cfg)), ws_{fs::path(cfg_.out)} { cfg_.validate(); }

    const RunConfig& config() const { return cfg_; }
    const Workspace& workspace() const { return ws_; }

    void ingest() {
        if (cfg_.corpus.empty()) throw ConfigError("ingest: set 'corpus' in the config");
        auto corpus = ingest_corpus(cfg_.corpus, *parse_corpus_format(cfg_.format));
        if (!cfg_.replacements.empty()) {
            const auto reps = parse_replacements(read_file(cfg_.replacements));
            corpus = patch_corpus(corpus, reps);
        }
        const auto split = split_corpus(corpus, cfg_.fractions, cfg_.seed_value());
        begin();
        write_file(ws_.corpus(), corpus_to_jsonl(corpus));
        write_file(ws_.split(), split.serialize());
    }

    void prep() {
        const auto corpus = load_corpus();
        const auto patterns = cfg_.patterns();
        begin();
        for (int x : cfg_.words) {
            const auto docs = prepare_corpus(corpus, patterns, cfg_.prep_config(x));
            write_file(ws_.prep(x), serialize_prep_cache(docs));
        }
    }

    void vocab() {
        const auto corpus = load_corpus();
        const auto split = load_split();
        const auto stopwords = cfg_.function_words();
        begin();
        for (int x : cfg_.words) {
            const auto docs = load_prep(x);
            const auto g = group_by_split(corpus, docs, split);
            write_file(ws_.vocab(x), build_vocabulary(g, cfg_.min_freq_for(x), cfg_.cap, stopwords).serialize());
        }
    }

    /// Fits the zoo, records validation metrics, and keeps the model files
    /// of the validation top-3.
    void train() {
        const auto corpus = load_corpus();
        const auto split = load_split();
        begin();
        for (int x : cfg_.words) {
            const auto docs = load_prep(x);
            const auto vocab = load_vocab(x);
            const auto g = group_by_split(corpus, docs, split);
            const auto m = build_matrices(g, vocab, cfg_.vector_mode);
            std::vector<std::optional<TrainedClassifier>> models;
            const auto cands = train_candidates(cfg_.zoo_specs(), m.train, m.validation, cfg_.train_options(), &models);
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& c : cands) {
                nlohmann::ordered_json e;
                e["index"] = c.index;
                e["spec"] = c.spec.name();
                if (c.ok()) e["validation"] = metrics_json(*c.validation);
                else e["error"] = c.error;
                j.push_back(std::move(e));
            }
            fs::remove_all(ws_.models(x));
            fs::create_directories(ws_.models(x));
            for (auto i : top_indices(cands)) write_file(ws_.model(x, i), save_model(*models[i]));
            write_file(ws_.candidates(x), j.dump(2) + "\n");
        }
    }

    /// Tests the validation top-3 of each X and writes the leaderboard.
    std::vector<WordCountSelection> select() {
        const auto corpus = load_corpus();
        const auto split = load_split();
        std::vector<WordCountSelection> per_x;
        for (int x : cfg_.words) {
            const auto docs = load_prep(x);
            const auto vocab = load_vocab(x);
            const auto g = group_by_split(corpus, docs, split);
            const auto m = build_matrices(g, vocab, cfg_.vector_mode);
            const auto cands = load_candidates(x);
            per_x.push_back(select_finalists(x, cands, [&](const Candidate& c) {
                return evaluate(load_model(Workspace::require(ws_.model(x, c.index), "train")), m.test);
            }));
        }
        begin();
        write_file(ws_.leaderboard(), render_leaderboard(per_x));
        write_file(ws_.selection(), selection_json(per_x).dump(2) + "\n");
        return per_x;
    }

    /// Re-evaluates each X's winner on every split.
    void evaluate_winners() {
        const auto corpus = load_corpus();
        const auto split = load_split();
        const auto sel = nlohmann::json::parse(Workspace::require(ws_.selection(), "select"));
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& x : sel.at("per_words")) {
            const int words = x.at("words").get<int>();
            const auto index = x.at("winner_index").get<std::size_t>();
            const auto model = load_model(Workspace::require(ws_.model(words, index), "train"));
            const auto docs = load_prep(words);
            const auto g = group_by_split(corpus, docs, split);
            const auto m = build_matrices(g, load_vocab(words), cfg_.vector_mode);
            nlohmann::ordered_json e;
            e["words"] = words;
            e["spec"] = model.spec.name();
            e["components"] = model.prep.pca ? model.prep.pca->output_dim() : 0;
            for (Split s : {Split::train, Split::validation, Split::test}) {
                if (m.of(s).rows() > 0) e[std::string(to_string(s))] = metrics_json(evaluate(model, m.of(s)));
            }
            out.push_back(std::move(e));
        }
        begin();
        write_file(ws_.evaluation(), out.dump(2) + "\n");
    }

    AnalysisResult analyze() {
        const auto corpus = load_corpus();
        const int x = cfg_.words.front();
        const auto vocab = load_vocab(x);
        auto res = analyze_corpus(corpus, cfg_.patterns(), vocab, cfg_.lexicon_set(),
                                  static_cast<std::size_t>(cfg_.top_words));
        begin();
        write_file(ws_.features(), render_features_dump(res.features));
        write_file(ws_.stats(), render_stats_csv(res.rows));
        write_file(ws_.influential(), render_influential_csv(res.influential));
        write_file(ws_.analysis(), analysis_json(res).dump(2) + "\n");
        return res;
    }

    std::string report() {
        const auto md = render_report(
            Workspace::require(ws_.config(), "ingest"), Workspace::require(ws_.leaderboard(), "select"),
            nlohmann::json::parse(Workspace::require(ws_.selection(), "select")), Workspace::require(ws_.stats(), "analyze"),
            Workspace::require(ws_.influential(), "analyze"),
            nlohmann::json::parse(Workspace::require(ws_.analysis(), "analyze")));
        write_file(ws_.report(), md);
        return md;
    }

    Corpus load_corpus() const {
        const auto text = Workspace::require(ws_.corpus(), "ingest");
        return Corpus(parse_jsonl_records(text));
    }

    SplitAssignment load_split() const { return SplitAssignment::parse(Workspace::require(ws_.split(), "ingest")); }

    std::vector<PreparedDoc> load_prep(int x) const {
        return parse_prep_cache(Workspace::require(ws_.prep(x), "prep"), x);
    }

    Vocabulary load_vocab(int x) const { return Vocabulary::parse(Workspace::require(ws_.vocab(x), "vocab")); }

    std::vector<Candidate> load_candidates(int x) const {
        const auto j = nlohmann::json::parse(Workspace::require(ws_.candidates(x), "train"));
        const auto zoo = cfg_.zoo_specs();
        std::vector<Candidate> out;
        for (const auto& e : j) {
            Candidate c;
            c.index = e.at("index").get<std::size_t>();
            if (c.index >= zoo.size() || zoo[c.index].name() != e.at("spec").get<std::string>())
                throw DataError(ws_.candidates(x).filename().string() + " does not match the configured zoo: rerun `veracity train`");
            c.spec = zoo[c.index];
            if (e.contains("validation")) c.validation = metrics_from_json(e.at("validation"));
            else c.error = e.value("error", std::string());
            out.push_back(std::move(c));
        }
        return out;
    }

private:
    RunConfig cfg_;
    Workspace ws_;

    void begin() const {
        fs::create_directories(ws_.dir);
        write_file(ws_.config(), cfg_.serialize());
    }
};

}  // namespace veracity
