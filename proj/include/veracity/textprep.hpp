#pragma once

// Text normalization: URL stripping, letter-only lowercasing, tokenization,
// stemming, truncation to the first X words and sentence segmentation.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "porter.hpp"

namespace veracity {

struct TokenStream {
    std::vector<std::string> tokens;
    bool stemmed = false;
    /// Word count the stream was truncated to, if any.
    std::optional<int> words;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    bool operator==(const TokenStream&) const = default;
};

struct PrepConfig {
    int words = 90;
    bool strip_urls = true;
    /// Count X over raw whitespace-separated words instead of cleaned tokens.
    bool count_raw_words = false;

    void validate() const {
        if (words <= 0) throw ConfigError("word count X must be positive, got " + std::to_string(words));
    }
};

namespace textprep_detail {

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool ieq_at(std::string_view s, std::size_t pos, std::string_view lower) {
    if (s.size() - pos < lower.size()) return false;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[pos + i])) != lower[i]) return false;
    }
    return true;
}

}  // namespace textprep_detail

/// Deletes http(s) URLs up to the next whitespace.
inline std::string strip_urls(std::string_view text) {
    using textprep_detail::ieq_at;
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if ((ieq_at(text, i, "http://") || ieq_at(text, i, "https://"))) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back(' ');
            continue;
        }
        out.push_back(text[i++]);
    }
    return out;
}

/// URLs removed, every non-letter turned into a space, lowercased, runs of
/// spaces collapsed and ends trimmed.
inline std::string clean_text(std::string_view text, bool remove_urls = true) {
    const std::string source = remove_urls ? strip_urls(text) : std::string(text);
    std::string out;
    out.reserve(source.size());
    bool pending_space = false;
    for (char c : source) {
        if (textprep_detail::is_ascii_alpha(c)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            pending_space = true;
        }
    }
    return out;
}

inline TokenStream tokenize(std::string_view cleaned) {
    TokenStream ts;
    std::size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
        const auto start = i;
        while (i < cleaned.size() && !std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
        if (i > start) ts.tokens.emplace_back(cleaned.substr(start, i - start));
    }
    return ts;
}

inline TokenStream stem_tokens(TokenStream ts) {
    for (auto& t : ts.tokens) t = stem(t);
    ts.stemmed = true;
    return ts;
}

/// First min(X, len) tokens.
inline TokenStream truncate(TokenStream ts, int words) {
    if (words <= 0) throw ConfigError("word count X must be positive, got " + std::to_string(words));
    if (ts.tokens.size() > static_cast<std::size_t>(words)) ts.tokens.resize(static_cast<std::size_t>(words));
    ts.words = words;
    return ts;
}

/// Classification-path preparation of an article body (boilerplate already
/// removed): clean, tokenize, stem, truncate.
inline TokenStream prepare_tokens(std::string_view body, const PrepConfig& cfg) {
    cfg.validate();
    if (!cfg.count_raw_words) {
        return truncate(stem_tokens(tokenize(clean_text(body, cfg.strip_urls))), cfg.words);
    }
    // Keep only the first X raw words, then normalize what remains.
    std::string head;
    int seen = 0;
    std::size_t i = 0;
    while (i < body.size() && seen < cfg.words) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        const auto start = i;
        while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        if (i > start) {
            head.append(body.substr(start, i - start));
            head.push_back(' ');
            ++seen;
        }
    }
    auto ts = stem_tokens(tokenize(clean_text(head, cfg.strip_urls)));
    ts.words = cfg.words;
    return ts;
}

/// Tokens that end in '.' but do not end a sentence.
inline std::set<std::string, std::less<>> default_abbreviations() {
    return {"Mr.",   "Mrs.",  "Ms.",  "Dr.",   "Prof.", "Sr.",   "Jr.",  "St.",  "Gen.",
            "Gov.",  "Sen.",  "Rep.", "Lt.",   "Col.",  "Sgt.",  "Capt.", "Inc.", "Ltd.",
            "Co.",   "Corp.", "vs.",  "etc.",  "e.g.",  "i.e.",  "U.S.", "U.K.", "No.",
            "Jan.",  "Feb.",  "Mar.", "Apr.",  "Aug.",  "Sept.", "Sep.", "Oct.", "Nov.",
            "Dec.",  "a.m.",  "p.m.", "Mt.",   "Ft.",   "Rev.",  "Hon.", "Pres."};
}

/// Splits on runs of '.', '!' or '?' (plus trailing closing quotes or
/// brackets) followed by whitespace or end of text, and on line breaks. A
/// single '.' closing a guarded abbreviation does not split.
inline std::vector<std::string> sentence_split(std::string_view text,
                                               const std::set<std::string, std::less<>>& guard) {
    std::vector<std::string> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        auto s = trim(text.substr(b, e - b));
        if (!s.empty()) out.emplace_back(s);
    };
    auto is_term = [](char c) { return c == '.' || c == '!' || c == '?'; };
    auto is_closer = [](char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; };

    std::size_t start = 0;
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            emit(start, i);
            start = ++i;
            continue;
        }
        if (!is_term(c)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && is_term(text[j])) ++j;
        while (j < n && is_closer(text[j])) ++j;
        if (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) {
            i = j;
            continue;
        }
        if (c == '.' && j == i + 1) {
            std::size_t w = i;
            while (w > start && !std::isspace(static_cast<unsigned char>(text[w - 1]))) --w;
            if (guard.count(text.substr(w, i + 1 - w))) {
                i = j;
                continue;
            }
        }
        emit(start, j);
        start = i = j;
    }
    emit(start, n);
    return out;
}

inline std::vector<std::string> sentence_split(std::string_view text) {
    static const auto guard = default_abbreviations();
    return sentence_split(text, guard);
}

// Prep cache: one line per article, "id<TAB>space-joined stems".

struct PreparedDoc {
    std::string id;
    TokenStream tokens;
};

inline std::string serialize_prep_cache(std::span<const PreparedDoc> docs) {
    std::string out;
    for (const auto& d : docs) {
        out += d.id;
        out.push_back('\t');
        for (std::size_t i = 0; i < d.tokens.tokens.size(); ++i) {
            if (i) out.push_back(' ');
            out += d.tokens.tokens[i];
        }
        out.push_back('\n');
    }
    return out;
}

inline std::vector<PreparedDoc> parse_prep_cache(std::string_view text, int words) {
    std::vector<PreparedDoc> docs;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw DataError("prep cache line " + std::to_string(line_no) + ": missing tab");
        PreparedDoc d;
        d.id = std::string(line.substr(0, tab));
        d.tokens = tokenize(line.substr(tab + 1));
        d.tokens.stemmed = true;
        d.tokens.words = words;
        if (d.tokens.size() > static_cast<std::size_t>(words))
            throw DataError("prep cache line " + std::to_string(line_no) + ": more than " +
                            std::to_string(words) + " tokens");
        docs.push_back(std::move(d));
    }
    return docs;
}

}  // namespace veracity
