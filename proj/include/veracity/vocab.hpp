#pragma once

// List A (stem frequencies over the training articles), List B (the
// high-frequency content-word vocabulary) and count/tf-idf vectorization.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "common.hpp"
#include "porter.hpp"
#include "stopwords.hpp"
#include "textprep.hpp"

namespace veracity {

struct WordCounts {
    std::map<std::string, std::uint64_t, std::less<>> counts;
    std::optional<int> words;  // truncation X of the counted streams

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [w, c] : counts) t += c;
        return t;
    }

    std::uint64_t at(std::string_view w) const {
        auto it = counts.find(w);
        return it == counts.end() ? 0 : it->second;
    }

    void add(const TokenStream& doc) {
        for (const auto& t : doc.tokens) ++counts[t];
    }

    void merge(const WordCounts& other) {
        for (const auto& [w, c] : other.counts) counts[w] += c;
    }
};

inline WordCounts build_list_a(std::span<const TokenStream> docs) {
    if (docs.empty()) throw DataError("cannot build List A from an empty corpus");
    WordCounts wc;
    wc.words = docs.front().words;
    for (const auto& d : docs) {
        if (d.words != wc.words) throw DataError("List A inputs truncated to different word counts");
        wc.add(d);
    }
    return wc;
}

/// Minimum List A frequency per word count X: 30->4, 60->5, 90->6, 120->6.
inline int min_frequency_for(int words) {
    switch (words) {
        case 30: return 4;
        case 60: return 5;
        case 90: return 6;
        case 120: return 6;
        default:
            throw ConfigError("no tabulated minimum frequency for X=" + std::to_string(words) +
                              " (tabulated: 30, 60, 90, 120); set min_freq explicitly");
    }
}

class FunctionWordList {
public:
    FunctionWordList() = default;

    /// Each word is stored both raw and stemmed, so membership works on
    /// either form of a token.
    explicit FunctionWordList(std::span<const std::string> words) {
        for (const auto& w : words) insert(w);
        if (words_.empty()) throw ConfigError("function-word list is empty");
    }

    static const FunctionWordList& defaults() {
        static const FunctionWordList list = [] {
            FunctionWordList l;
            for (auto w : kFunctionWords) l.insert(std::string(w));
            return l;
        }();
        return list;
    }

    /// One word per line; '#' starts a comment line.
    static FunctionWordList load(const std::filesystem::path& path) {
        std::vector<std::string> words;
        const std::string text = read_file(path);
        for (auto line : split(text, '\n')) {
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            words.emplace_back(line);
        }
        return FunctionWordList(words);
    }

    bool contains(std::string_view w) const { return forms_.count(w) > 0; }
    const std::set<std::string, std::less<>>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }

    std::uint64_t checksum() const {
        std::uint64_t h = fnv1a("function-words");
        for (const auto& w : words_) {
            h = fnv1a(w, h);
            h = fnv1a("\n", h);
        }
        return h;
    }

private:
    std::set<std::string, std::less<>> words_;
    std::set<std::string, std::less<>> forms_;

    void insert(const std::string& w) {
        words_.insert(w);
        forms_.insert(w);
        forms_.insert(stem(w));
    }
};

struct VocabParams {
    int words = 90;
    int min_freq = 6;
    int cap = 1000;

    bool operator==(const VocabParams&) const = default;
};

struct VocabEntry {
    std::string stem;
    std::uint64_t frequency = 0;

    bool operator==(const VocabEntry&) const = default;
};

class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<VocabEntry> entries, VocabParams params)
        : entries_(std::move(entries)), params_(params) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!index_.emplace(entries_[i].stem, i).second)
                throw DataError("duplicate vocabulary entry '" + entries_[i].stem + "'");
        }
    }

    const std::vector<VocabEntry>& entries() const { return entries_; }
    const VocabParams& params() const { return params_; }
    std::size_t size() const { return entries_.size(); }

    std::optional<std::size_t> index_of(std::string_view stem) const {
        auto it = index_.find(std::string(stem));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Header `X,min_freq,cap`, then one `rank,stem,frequency` line per
    /// entry with 1-based rank.
    std::string serialize() const {
        std::string out = std::to_string(params_.words) + ',' + std::to_string(params_.min_freq) + ',' +
                          std::to_string(params_.cap) + '\n';
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += std::to_string(i + 1) + ',' + entries_[i].stem + ',' +
                   std::to_string(entries_[i].frequency) + '\n';
        }
        return out;
    }

    static Vocabulary parse(std::string_view text) {
        auto lines = split(text, '\n');
        if (lines.empty() || trim(lines[0]).empty()) throw DataError("vocabulary file: missing header");
        auto header = split(trim(lines[0]), ',');
        if (header.size() != 3) throw DataError("vocabulary file: header must be 'X,min_freq,cap'");
        VocabParams p{parse_int<int>(header[0]), parse_int<int>(header[1]), parse_int<int>(header[2])};
        std::vector<VocabEntry> entries;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto line = trim(lines[i]);
            if (line.empty()) continue;
            auto f = split(line, ',');
            if (f.size() != 3) throw DataError("vocabulary file line " + std::to_string(i + 1) + ": malformed");
            if (parse_int<std::size_t>(f[0]) != entries.size() + 1)
                throw DataError("vocabulary file line " + std::to_string(i + 1) + ": rank out of order");
            entries.push_back({std::string(f[1]), parse_int<std::uint64_t>(f[2])});
        }
        return Vocabulary(std::move(entries), p);
    }

    /// Identity of the vector space: hash of the serialized vocabulary.
    std::uint64_t fingerprint() const { return fnv1a(serialize()); }

private:
    std::vector<VocabEntry> entries_;
    VocabParams params_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Filter by min_freq, drop function words, order by (frequency desc,
/// stem asc) and keep the first `cap`.
inline Vocabulary build_list_b(const WordCounts& list_a, int min_freq, const FunctionWordList& stopwords,
                               int cap = 1000) {
    if (cap <= 0) throw ConfigError("vocabulary cap must be positive");
    if (min_freq < 1) throw ConfigError("min_freq must be at least 1");
    std::vector<VocabEntry> kept;
    for (const auto& [w, c] : list_a.counts) {
        if (c >= static_cast<std::uint64_t>(min_freq) && !stopwords.contains(w)) kept.push_back({w, c});
    }
    std::sort(kept.begin(), kept.end(), [](const VocabEntry& a, const VocabEntry& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return a.stem < b.stem;
    });
    if (kept.size() > static_cast<std::size_t>(cap)) kept.resize(static_cast<std::size_t>(cap));
    if (kept.empty())
        throw DataError("List B is empty: no content word reaches frequency " + std::to_string(min_freq));
    return Vocabulary(std::move(kept), VocabParams{list_a.words.value_or(0), min_freq, cap});
}

enum class VectorMode { count, tfidf };

inline std::optional<VectorMode> parse_vector_mode(std::string_view s) {
    if (s == "count") return VectorMode::count;
    if (s == "tfidf") return VectorMode::tfidf;
    return std::nullopt;
}

inline constexpr std::string_view to_string(VectorMode m) { return m == VectorMode::tfidf ? "tfidf" : "count"; }

struct FeatureVector {
    std::string id;
    std::vector<double> values;
    std::uint64_t fingerprint = 0;
    int words = 0;
};

/// Per-entry document frequencies frozen from the training split.
struct DocumentFrequencies {
    std::size_t documents = 0;
    std::vector<std::size_t> df;

    std::vector<double> idf() const {
        std::vector<double> w(df.size(), 0.0);
        for (std::size_t i = 0; i < df.size(); ++i) {
            if (df[i] > 0) w[i] = std::log(static_cast<double>(documents) / static_cast<double>(df[i]));
        }
        return w;
    }
};

inline DocumentFrequencies document_frequencies(std::span<const TokenStream> train, const Vocabulary& vocab) {
    DocumentFrequencies d;
    d.documents = train.size();
    d.df.assign(vocab.size(), 0);
    std::vector<char> seen(vocab.size());
    for (const auto& doc : train) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& t : doc.tokens) {
            if (auto i = vocab.index_of(t); i && !seen[*i]) {
                seen[*i] = 1;
                ++d.df[*i];
            }
        }
    }
    return d;
}

/// Maps token streams onto the vocabulary's vector space.
class Vectorizer {
public:
    explicit Vectorizer(const Vocabulary& vocab, VectorMode mode = VectorMode::count,
                        std::optional<DocumentFrequencies> df = std::nullopt)
        : vocab_(&vocab), mode_(mode), fingerprint_(vocab.fingerprint()) {
        if (mode_ == VectorMode::tfidf) {
            if (!df) throw ConfigError("tfidf vectorization needs training document frequencies");
            if (df->df.size() != vocab.size()) throw ConfigError("document frequencies do not match vocabulary");
            weights_ = df->idf();
        }
    }

    FeatureVector operator()(std::string id, const TokenStream& doc) const {
        if (doc.words != vocab_->params().words)
            throw DataError("document '" + id + "' truncated to X=" +
                            (doc.words ? std::to_string(*doc.words) : std::string("none")) +
                            " but vocabulary was built for X=" + std::to_string(vocab_->params().words));
        FeatureVector v;
        v.id = std::move(id);
        v.values.assign(vocab_->size(), 0.0);
        v.fingerprint = fingerprint_;
        v.words = vocab_->params().words;
        for (const auto& t : doc.tokens) {
            if (auto i = vocab_->index_of(t)) v.values[*i] += 1.0;
        }
        if (mode_ == VectorMode::tfidf) {
            for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] *= weights_[i];
        }
        return v;
    }

    VectorMode mode() const { return mode_; }
    std::uint64_t fingerprint() const { return fingerprint_; }

private:
    const Vocabulary* vocab_;
    VectorMode mode_;
    std::uint64_t fingerprint_;
    std::vector<double> weights_;
};

inline FeatureVector vectorize(std::string id, const TokenStream& doc, const Vocabulary& vocab) {
    return Vectorizer(vocab)(std::move(id), doc);
}

}  // namespace veracity
