#pragma once

// Labeled article collections: ingestion from disk, boilerplate removal,
// stratified train/validation/test splits and curation patches.

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "html.hpp"

namespace veracity {

struct ArticleRecord {
    std::string id;
    std::string source_id;
    std::string url;
    Label label = Label::credible;
    std::string published_at;  // YYYY-MM-DD, may be empty
    std::string raw_html;
    std::string raw_text;

    /// Article body: the paragraph text of raw_html, or raw_text verbatim.
    std::string body() const {
        return raw_html.empty() ? raw_text : extract_paragraphs(raw_html);
    }
};

struct Source {
    std::string id;
    Label label;

    bool operator==(const Source&) const = default;
};

inline bool is_valid_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

class Corpus {
public:
    Corpus() = default;

    /// Builds a corpus, deriving the source list in order of first
    /// appearance. Throws DataError if any invariant is violated.
    explicit Corpus(std::vector<ArticleRecord> articles) : articles_(std::move(articles)) {
        std::unordered_map<std::string, Label> seen;
        for (const auto& a : articles_) {
            if (seen.emplace(a.source_id, a.label).second) sources_.push_back({a.source_id, a.label});
        }
        validate();
    }

    const std::vector<ArticleRecord>& articles() const { return articles_; }
    const std::vector<Source>& sources() const { return sources_; }
    std::size_t size() const { return articles_.size(); }
    bool empty() const { return articles_.empty(); }

    std::size_t count(Label l) const {
        return static_cast<std::size_t>(std::count_if(
            articles_.begin(), articles_.end(), [l](const ArticleRecord& a) { return a.label == l; }));
    }

    const ArticleRecord* find(std::string_view id) const {
        for (const auto& a : articles_) {
            if (a.id == id) return &a;
        }
        return nullptr;
    }

    void validate() const {
        std::unordered_set<std::string> ids;
        std::unordered_map<std::string, Label> source_labels;
        for (const auto& s : sources_) source_labels.emplace(s.id, s.label);
        for (std::size_t i = 0; i < articles_.size(); ++i) {
            const auto& a = articles_[i];
            const auto where = "article " + std::to_string(i) + " ('" + a.id + "')";
            if (a.id.empty()) throw DataError(where + ": empty id");
            if (a.source_id.empty()) throw DataError(where + ": empty source");
            if (!ids.insert(a.id).second) throw DataError("duplicate article id '" + a.id + "'");
            if (a.raw_html.empty() == a.raw_text.empty())
                throw DataError(where + ": exactly one of html/text must be non-empty");
            if (!a.published_at.empty() && !is_valid_date(a.published_at))
                throw DataError(where + ": published_at must be YYYY-MM-DD");
            auto it = source_labels.find(a.source_id);
            if (it == source_labels.end())
                throw DataError(where + ": source '" + a.source_id + "' not registered");
            if (it->second != a.label)
                throw DataError("source '" + a.source_id + "' carries both labels");
        }
    }

private:
    std::vector<ArticleRecord> articles_;
    std::vector<Source> sources_;
};

// ---------------------------------------------------------------------------
// Ingestion

enum class CorpusFormat { jsonl, csv, directory_tree };

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
    if (s == "jsonl") return CorpusFormat::jsonl;
    if (s == "csv") return CorpusFormat::csv;
    if (s == "directory-tree" || s == "dir") return CorpusFormat::directory_tree;
    return std::nullopt;
}

namespace corpus_detail {

using FieldMap = std::map<std::string, std::string, std::less<>>;

inline ArticleRecord record_from_fields(const FieldMap& f, std::size_t index) {
    auto get = [&](std::string_view key, bool required) -> std::string {
        auto it = f.find(key);
        if (it == f.end() || it->second.empty()) {
            if (required)
                throw DataError("record " + std::to_string(index) + ": missing field '" +
                                std::string(key) + "'");
            return {};
        }
        return it->second;
    };
    ArticleRecord r;
    r.id = get("id", true);
    r.source_id = get("source", true);
    const auto label = get("label", true);
    auto parsed = parse_label(label);
    if (!parsed)
        throw DataError("record " + std::to_string(index) + ": invalid label '" + label + "'");
    r.label = *parsed;
    r.url = get("url", false);
    r.published_at = get("published_at", false);
    r.raw_html = get("html", false);
    r.raw_text = get("text", false);
    if (r.raw_html.empty() && r.raw_text.empty())
        throw DataError("record " + std::to_string(index) + ": missing field 'html' or 'text'");
    if (!r.raw_html.empty() && !r.raw_text.empty())
        throw DataError("record " + std::to_string(index) + ": both 'html' and 'text' present");
    return r;
}

/// RFC 4180 reader: quoted fields may contain commas, quotes ("") and newlines.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (field_started || !field.empty() || !row.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            field_started = false;
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (quoted) throw DataError("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace corpus_detail

inline ArticleRecord record_from_json(const nlohmann::json& j, std::size_t index) {
    if (!j.is_object()) throw DataError("record " + std::to_string(index) + ": not a JSON object");
    corpus_detail::FieldMap f;
    for (const auto& [key, value] : j.items()) {
        if (value.is_string()) f[key] = value.get<std::string>();
    }
    return corpus_detail::record_from_fields(f, index);
}

inline nlohmann::json record_to_json(const ArticleRecord& a) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["source"] = a.source_id;
    j["label"] = std::string(to_string(a.label));
    if (!a.published_at.empty()) j["published_at"] = a.published_at;
    if (!a.url.empty()) j["url"] = a.url;
    if (!a.raw_html.empty()) j["html"] = a.raw_html;
    if (!a.raw_text.empty()) j["text"] = a.raw_text;
    return j;
}

inline std::vector<ArticleRecord> parse_jsonl_records(std::string_view text) {
    std::vector<ArticleRecord> records;
    std::size_t index = 0;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError("record " + std::to_string(index) + ": invalid JSON (" + e.what() + ")");
        }
        records.push_back(record_from_json(j, index));
        ++index;
    }
    return records;
}

inline std::vector<ArticleRecord> parse_csv_records(std::string_view text) {
    auto rows = corpus_detail::parse_csv(text);
    if (rows.empty()) throw DataError("csv: missing header row");
    const auto header = rows.front();
    std::vector<ArticleRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw DataError("record " + std::to_string(r - 1) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(rows[r].size()));
        corpus_detail::FieldMap f;
        for (std::size_t c = 0; c < header.size(); ++c) f[header[c]] = rows[r][c];
        records.push_back(corpus_detail::record_from_fields(f, r - 1));
    }
    return records;
}

/// Layout: <root>/<credible|fake>/<source>/<id>.html|.htm|.txt
inline std::vector<ArticleRecord> read_directory_records(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::vector<ArticleRecord> records;
    for (Label label : {Label::credible, Label::fake}) {
        const auto label_dir = root / std::string(to_string(label));
        if (!fs::is_directory(label_dir)) continue;
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(label_dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            const auto rel = fs::relative(file, label_dir);
            if (std::distance(rel.begin(), rel.end()) != 2)
                throw DataError("unexpected file depth: '" + file.string() +
                                "' (want <label>/<source>/<id>.<ext>)");
            const auto ext = file.extension().string();
            ArticleRecord r;
            r.id = file.stem().string();
            r.source_id = rel.begin()->string();
            r.label = label;
            if (ext == ".html" || ext == ".htm") {
                r.raw_html = read_file(file);
            } else if (ext == ".txt") {
                r.raw_text = read_file(file);
            } else {
                continue;
            }
            if (r.raw_html.empty() && r.raw_text.empty())
                throw DataError("empty article file '" + file.string() + "'");
            records.push_back(std::move(r));
        }
    }
    if (records.empty()) throw DataError("no articles under '" + root.string() + "'");
    return records;
}

inline Corpus ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
    if (!std::filesystem::exists(path)) throw DataError("corpus path '" + path.string() + "' does not exist");
    switch (format) {
        case CorpusFormat::jsonl:
            return Corpus(parse_jsonl_records(read_file(path)));
        case CorpusFormat::csv:
            return Corpus(parse_csv_records(read_file(path)));
        case CorpusFormat::directory_tree:
            return Corpus(read_directory_records(path));
    }
    throw DataError("unknown corpus format");
}

inline std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& a : corpus.articles()) {
        out += record_to_json(a).dump();
        out.push_back('\n');
    }
    return out;
}

inline std::string corpus_to_csv(const Corpus& corpus) {
    using corpus_detail::csv_escape;
    std::string out = "id,source,label,published_at,url,html,text\n";
    for (const auto& a : corpus.articles()) {
        out += csv_escape(a.id) + ',' + csv_escape(a.source_id) + ',' +
               std::string(to_string(a.label)) + ',' + csv_escape(a.published_at) + ',' +
               csv_escape(a.url) + ',' + csv_escape(a.raw_html) + ',' + csv_escape(a.raw_text) +
               '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boilerplate removal

/// One removal rule. `line` rules drop every line the regex matches
/// anywhere in; `strip` rules delete the matched span and drop the line if
/// nothing but whitespace/punctuation remains; `literal` rules drop lines
/// containing the text.
struct BoilerplatePattern {
    enum class Kind { line, strip, literal };

    Kind kind;
    std::string source;
    std::regex regex;

    /// Parses "line:<regex>", "strip:<regex>" or "literal:<text>". A bare
    /// pattern without prefix is a `line` regex.
    static BoilerplatePattern parse(std::string_view spec) {
        BoilerplatePattern p;
        std::string_view body = spec;
        p.kind = Kind::line;
        if (spec.starts_with("line:")) {
            body = spec.substr(5);
        } else if (spec.starts_with("strip:")) {
            p.kind = Kind::strip;
            body = spec.substr(6);
        } else if (spec.starts_with("literal:")) {
            p.kind = Kind::literal;
            body = spec.substr(8);
        }
        if (body.empty()) throw ConfigError("empty boilerplate pattern '" + std::string(spec) + "'");
        p.source = std::string(body);
        if (p.kind != Kind::literal) {
            try {
                p.regex = std::regex(p.source, std::regex::ECMAScript | std::regex::optimize);
            } catch (const std::regex_error& e) {
                throw ConfigError("invalid boilerplate pattern '" + std::string(spec) + "': " + e.what());
            }
        }
        return p;
    }
};

inline std::vector<BoilerplatePattern> parse_boilerplate_patterns(std::span<const std::string> specs) {
    std::vector<BoilerplatePattern> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(BoilerplatePattern::parse(s));
    return out;
}

/// Pattern file: one pattern per line, '#' starts a comment line.
inline std::vector<BoilerplatePattern> load_boilerplate_patterns(const std::filesystem::path& path) {
    std::vector<std::string> specs;
    const std::string text = read_file(path);
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        specs.emplace_back(line);
    }
    return parse_boilerplate_patterns(specs);
}

/// Wire-service datelines, bylines and reporting credits.
inline std::vector<std::string> default_boilerplate_specs() {
    return {
        R"(strip:^[A-Z][A-Za-z .'-]*(, [A-Za-z .]+)? ?\((Reuters|AP|AFP|CNN|Bloomberg|UPI)\) ?(-|–|—)+ ?)",
        R"(line:^(By|BY) [A-Z][A-Za-z.'-]+( [A-Z][A-Za-z.'-]+)*( and [A-Z][A-Za-z.'-]+( [A-Z][A-Za-z.'-]+)*)?\.?$)",
        R"(line:^\(?(Reporting|Additional reporting|Writing|Editing) by )",
        R"(line:^(Follow|Contact) (us|the author|him|her) )",
    };
}

inline std::string remove_boilerplate(std::string_view text, std::span<const BoilerplatePattern> patterns) {
    if (patterns.empty()) return std::string(text);
    std::string out;
    bool first = true;
    for (auto line_view : split(text, '\n')) {
        std::string line(line_view);
        bool drop = false;
        for (const auto& p : patterns) {
            if (p.kind == BoilerplatePattern::Kind::literal) {
                if (line.find(p.source) != std::string::npos) drop = true;
            } else if (p.kind == BoilerplatePattern::Kind::line) {
                if (std::regex_search(line, p.regex)) drop = true;
            } else {
                std::string stripped = std::regex_replace(line, p.regex, "");
                if (stripped != line) {
                    const bool residue = std::any_of(stripped.begin(), stripped.end(), [](unsigned char c) {
                        return std::isalnum(c) || c >= 0x80;
                    });
                    if (!residue) drop = true;
                    line = std::move(stripped);
                }
            }
            if (drop) break;
        }
        if (drop) continue;
        if (!first) out.push_back('\n');
        out += line;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splits

enum class Split : std::uint8_t { train, validation, test };

inline constexpr std::string_view to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    return "?";
}

inline std::optional<Split> parse_split(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "validation") return Split::validation;
    if (s == "test") return Split::test;
    return std::nullopt;
}

struct SplitFractions {
    double train = 0.6;
    double validation = 0.2;
    double test = 0.2;

    void validate() const {
        for (double f : {train, validation, test}) {
            if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("split fractions must lie in [0,1]");
        }
        if (std::abs(train + validation + test - 1.0) > 1e-9)
            throw ConfigError("split fractions must sum to 1");
    }
};

struct SplitAssignment {
    std::map<std::string, Split> assignment;  // ordered by id
    std::uint64_t seed = 0;

    std::vector<std::string> ids(Split s) const {
        std::vector<std::string> out;
        for (const auto& [id, sp] : assignment) {
            if (sp == s) out.push_back(id);
        }
        return out;
    }

    std::size_t count(Split s) const {
        return static_cast<std::size_t>(std::count_if(assignment.begin(), assignment.end(),
                                                      [s](const auto& kv) { return kv.second == s; }));
    }

    Split at(const std::string& id) const {
        auto it = assignment.find(id);
        if (it == assignment.end()) throw DataError("article '" + id + "' has no split assignment");
        return it->second;
    }

    /// `id,split` lines sorted by id, preceded by a header.
    std::string serialize() const {
        std::string out = "id,split\n";
        for (const auto& [id, s] : assignment) {
            out += id;
            out.push_back(',');
            out += to_string(s);
            out.push_back('\n');
        }
        return out;
    }

    static SplitAssignment parse(std::string_view text) {
        SplitAssignment sa;
        bool header = true;
        for (auto line : split(text, '\n')) {
            line = trim(line);
            if (line.empty()) continue;
            if (header) {
                if (line != "id,split") throw DataError("split file: expected header 'id,split'");
                header = false;
                continue;
            }
            const auto comma = line.rfind(',');
            if (comma == std::string_view::npos) throw DataError("split file: malformed line");
            auto s = parse_split(line.substr(comma + 1));
            if (!s) throw DataError("split file: unknown split '" + std::string(line.substr(comma + 1)) + "'");
            if (!sa.assignment.emplace(std::string(line.substr(0, comma)), *s).second)
                throw DataError("split file: duplicate id");
        }
        if (header) throw DataError("split file: missing header");
        return sa;
    }
};

namespace corpus_detail {

/// Largest-remainder apportionment of `total` slots across groups with
/// ideal shares `ideal[g]` and hard caps `cap[g]`. Ties in remainder are
/// broken by `tiebreak[g]` (lower first).
inline std::vector<std::size_t> apportion(std::size_t total, const std::vector<double>& ideal,
                                          const std::vector<std::size_t>& cap,
                                          const std::vector<std::uint64_t>& tiebreak) {
    const auto g = ideal.size();
    std::vector<std::size_t> out(g);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < g; ++i) {
        out[i] = std::min(cap[i], static_cast<std::size_t>(std::floor(ideal[i])));
        assigned += out[i];
    }
    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = ideal[a] - std::floor(ideal[a]);
        const double rb = ideal[b] - std::floor(ideal[b]);
        if (ra != rb) return ra > rb;
        return tiebreak[a] < tiebreak[b];
    });
    // Repeated passes: a group may take more than one extra slot only when
    // others are capped.
    while (assigned < total) {
        bool progress = false;
        for (auto i : order) {
            if (assigned == total) break;
            if (out[i] < cap[i]) {
                ++out[i];
                ++assigned;
                progress = true;
            }
        }
        if (!progress) break;
    }
    while (assigned > total) {
        for (auto it = order.rbegin(); it != order.rend() && assigned > total; ++it) {
            if (out[*it] > 0) {
                --out[*it];
                --assigned;
            }
        }
    }
    return out;
}

inline std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace corpus_detail

/// Seeded stratified split: label totals follow the fractions (rounded),
/// and within a label each source receives its proportional share by
/// largest-remainder apportionment.
inline SplitAssignment split_corpus(const Corpus& corpus, const SplitFractions& fractions,
                                    std::uint64_t seed) {
    using corpus_detail::apportion;
    using corpus_detail::round_half_up;
    fractions.validate();
    if (corpus.empty()) throw DataError("cannot split an empty corpus");
    for (Label l : {Label::credible, Label::fake}) {
        const auto n = corpus.count(l);
        if (n == 1)
            throw DataError("cannot stratify: label '" + std::string(to_string(l)) +
                            "' has a single article");
    }

    Rng rng(seed);
    SplitAssignment sa;
    sa.seed = seed;
    const auto& articles = corpus.articles();

    for (Label label : {Label::credible, Label::fake}) {
        std::vector<std::string> source_ids;
        std::map<std::string, std::vector<std::size_t>> by_source;
        for (const auto& s : corpus.sources()) {
            if (s.label == label) source_ids.push_back(s.id);
        }
        for (std::size_t i = 0; i < articles.size(); ++i) {
            if (articles[i].label == label) by_source[articles[i].source_id].push_back(i);
        }
        std::size_t n = 0;
        for (const auto& sid : source_ids) {
            auto& members = by_source[sid];
            shuffle(members.begin(), members.end(), rng);
            n += members.size();
        }
        if (n == 0) continue;

        const std::size_t n_train = std::min(n, round_half_up(fractions.train * static_cast<double>(n)));
        const std::size_t n_val =
            std::min(n - n_train, round_half_up(fractions.validation * static_cast<double>(n)));

        const auto g = source_ids.size();
        std::vector<std::uint64_t> tiebreak(g);
        for (auto& t : tiebreak) t = rng();
        std::vector<double> ideal_train(g), ideal_val(g);
        std::vector<std::size_t> cap(g);
        for (std::size_t s = 0; s < g; ++s) {
            const auto sz = static_cast<double>(by_source[source_ids[s]].size());
            ideal_train[s] = sz * static_cast<double>(n_train) / static_cast<double>(n);
            ideal_val[s] = sz * static_cast<double>(n_val) / static_cast<double>(n);
            cap[s] = by_source[source_ids[s]].size();
        }
        const auto train_q = apportion(n_train, ideal_train, cap, tiebreak);
        for (std::size_t s = 0; s < g; ++s) cap[s] -= train_q[s];
        const auto val_q = apportion(n_val, ideal_val, cap, tiebreak);

        for (std::size_t s = 0; s < g; ++s) {
            const auto& members = by_source[source_ids[s]];
            for (std::size_t k = 0; k < members.size(); ++k) {
                Split sp = k < train_q[s]                 ? Split::train
                           : k < train_q[s] + val_q[s]    ? Split::validation
                                                          : Split::test;
                sa.assignment.emplace(articles[members[k]].id, sp);
            }
        }
    }
    return sa;
}

// ---------------------------------------------------------------------------
// Patches

struct Replacement {
    std::string old_id;
    ArticleRecord replacement;
};

/// Substitutes articles in place. Each replacement keeps the label of the
/// article it replaces; the result is re-validated.
inline Corpus patch_corpus(const Corpus& corpus, std::span<const Replacement> replacements) {
    std::vector<ArticleRecord> articles = corpus.articles();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < articles.size(); ++i) index.emplace(articles[i].id, i);
    std::set<std::string> replaced;
    for (const auto& r : replacements) {
        auto it = index.find(r.old_id);
        if (it == index.end() || replaced.count(r.old_id))
            throw DataError("patch: unknown article id '" + r.old_id + "'");
        auto& slot = articles[it->second];
        if (slot.label != r.replacement.label)
            throw DataError("patch: replacement for '" + r.old_id + "' has label '" +
                            std::string(to_string(r.replacement.label)) + "', expected '" +
                            std::string(to_string(slot.label)) + "'");
        replaced.insert(r.old_id);
        slot = r.replacement;
    }
    return Corpus(std::move(articles));
}

/// Patch file: JSONL records carrying a `replaces` field plus the usual
/// article fields.
inline std::vector<Replacement> parse_replacements(std::string_view text) {
    std::vector<Replacement> out;
    std::size_t index = 0;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError("replacement " + std::to_string(index) + ": invalid JSON (" + e.what() + ")");
        }
        if (!j.contains("replaces") || !j["replaces"].is_string())
            throw DataError("replacement " + std::to_string(index) + ": missing field 'replaces'");
        out.push_back({j["replaces"].get<std::string>(), record_from_json(j, index)});
        ++index;
    }
    return out;
}

}  // namespace veracity
