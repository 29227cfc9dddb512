#pragma once

// Top-3 model selection: rank every spec on validation, test only the
// finalists, pick the winner by test accuracy.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "classifier.hpp"
#include "corpus.hpp"

namespace veracity {

/// One zoo entry after training. Failed fits keep their error text.
struct Candidate {
    std::size_t index = 0;  // position in the zoo
    ClassifierSpec spec;
    std::optional<Metrics> validation;
    std::string error;

    bool ok() const { return validation.has_value(); }
};

struct Finalist {
    std::size_t index = 0;
    ClassifierSpec spec;
    Metrics validation;
    Metrics test;
};

struct WordCountSelection {
    int words = 0;
    std::vector<Candidate> ranked;  // survivors in rank order, then failures in zoo order
    std::vector<Finalist> finalists;
    std::size_t winner = 0;  // index into finalists

    const Finalist& best() const { return finalists.at(winner); }
};

/// Validation accuracy desc, then F1 desc, then spec name asc.
inline bool ranks_before(const Candidate& a, const Candidate& b) {
    const double aa = a.validation->accuracy(), ba = b.validation->accuracy();
    if (aa != ba) return aa > ba;
    const double af = a.validation->f1(), bf = b.validation->f1();
    if (af != bf) return af > bf;
    const auto an = a.spec.name(), bn = b.spec.name();
    if (an != bn) return an < bn;
    return a.index < b.index;
}

inline std::vector<Candidate> rank_candidates(std::vector<Candidate> cands) {
    std::vector<Candidate> ok, failed;
    for (auto& c : cands) (c.ok() ? ok : failed).push_back(std::move(c));
    std::stable_sort(ok.begin(), ok.end(), ranks_before);
    std::sort(failed.begin(), failed.end(), [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
    ok.insert(ok.end(), std::make_move_iterator(failed.begin()), std::make_move_iterator(failed.end()));
    return ok;
}

/// `test_metrics` is called once per finalist and never for anything else.
inline WordCountSelection select_finalists(int words, std::vector<Candidate> cands,
                                           const std::function<Metrics(const Candidate&)>& test_metrics,
                                           std::size_t top = 3) {
    WordCountSelection sel;
    sel.words = words;
    sel.ranked = rank_candidates(std::move(cands));
    for (const auto& c : sel.ranked) {
        if (!c.ok() || sel.finalists.size() == top) break;
        sel.finalists.push_back({c.index, c.spec, *c.validation, test_metrics(c)});
    }
    if (sel.finalists.empty()) throw ModelError("X=" + std::to_string(words) + ": every classifier failed to train");
    // Ties on test accuracy keep validation order.
    for (std::size_t i = 1; i < sel.finalists.size(); ++i) {
        if (sel.finalists[i].test.accuracy() > sel.finalists[sel.winner].test.accuracy()) sel.winner = i;
    }
    return sel;
}

/// Trains every spec; a failure is recorded and selection carries on.
inline std::vector<Candidate> train_candidates(
    const std::vector<ClassifierSpec>& zoo, const FeatureMatrix& train, const FeatureMatrix& validation,
    const TrainOptions& options, std::vector<std::optional<TrainedClassifier>>* models = nullptr) {
    if (zoo.size() < 3) throw ConfigError("the zoo needs at least 3 classifier specs, got " + std::to_string(zoo.size()));
    std::optional<Preprocessor> shared;
    std::string shared_error;
    std::vector<Candidate> out;
    if (models) models->assign(zoo.size(), std::nullopt);
    for (std::size_t i = 0; i < zoo.size(); ++i) {
        Candidate c{i, zoo[i], std::nullopt, {}};
        try {
            TrainedClassifier tc;
            if (uses_raw_features(zoo[i].family)) {
                tc = train_classifier(zoo[i], train, options);
            } else {
                if (!shared && shared_error.empty()) {
                    try {
                        shared = Preprocessor::fit(train.values, options);
                    } catch (const Error& e) {
                        shared_error = e.what();
                    }
                }
                if (!shared) throw ModelError(shared_error);
                tc = train_classifier(zoo[i], train, *shared);
            }
            c.validation = evaluate(tc, validation);
            if (models) (*models)[i] = std::move(tc);
        } catch (const Error& e) {
            c.error = e.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// Best finalist over all word counts: test accuracy desc, then F1 desc,
/// then smaller X.
inline std::size_t overall_winner(const std::vector<WordCountSelection>& per_x) {
    if (per_x.empty()) throw DataError("no selections to compare");
    std::size_t best = 0;
    for (std::size_t i = 1; i < per_x.size(); ++i) {
        const auto& a = per_x[i].best().test;
        const auto& b = per_x[best].best().test;
        if (a.accuracy() > b.accuracy() || (a.accuracy() == b.accuracy() && a.f1() > b.f1())) best = i;
    }
    return best;
}

inline nlohmann::ordered_json metrics_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["accuracy"] = m.accuracy();
    j["precision"] = m.precision();
    j["recall"] = m.recall();
    j["f1"] = m.f1();
    j["fake_accuracy"] = m.fake_accuracy();
    j["credible_accuracy"] = m.credible_accuracy();
    j["pooled_recall"] = m.pooled_recall();
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["fn"] = m.fn;
    j["tn"] = m.tn;
    return j;
}

inline Metrics metrics_from_json(const nlohmann::json& j) {
    Metrics m;
    m.tp = j.at("tp").get<std::size_t>();
    m.fp = j.at("fp").get<std::size_t>();
    m.fn = j.at("fn").get<std::size_t>();
    m.tn = j.at("tn").get<std::size_t>();
    return m;
}

inline nlohmann::ordered_json selection_json(const std::vector<WordCountSelection>& per_x) {
    nlohmann::ordered_json root;
    root["per_words"] = nlohmann::ordered_json::array();
    for (const auto& s : per_x) {
        nlohmann::ordered_json x;
        x["words"] = s.words;
        x["leaderboard"] = nlohmann::ordered_json::array();
        for (const auto& c : s.ranked) {
            nlohmann::ordered_json e;
            e["index"] = c.index;
            e["spec"] = c.spec.name();
            if (c.ok()) e["validation"] = metrics_json(*c.validation);
            else e["error"] = c.error;
            x["leaderboard"].push_back(std::move(e));
        }
        x["finalists"] = nlohmann::ordered_json::array();
        for (const auto& f : s.finalists) {
            nlohmann::ordered_json e;
            e["index"] = f.index;
            e["spec"] = f.spec.name();
            e["family"] = std::string(to_string(f.spec.family));
            e["validation"] = metrics_json(f.validation);
            e["test"] = metrics_json(f.test);
            x["finalists"].push_back(std::move(e));
        }
        x["winner"] = s.best().spec.name();
        x["winner_index"] = s.best().index;
        root["per_words"].push_back(std::move(x));
    }
    const auto& w = per_x[overall_winner(per_x)];
    root["winner"] = {{"words", w.words}, {"spec", w.best().spec.name()}, {"test", metrics_json(w.best().test)}};
    return root;
}

/// Table-1 shaped rows, one per finalist: `words,model,recall,f1,accuracy`
/// with percentages to one decimal.
inline std::string render_leaderboard(const std::vector<WordCountSelection>& per_x) {
    std::string out = "words,model,recall,f1,accuracy\n";
    for (const auto& s : per_x) {
        for (const auto& f : s.finalists) {
            const auto model = std::string(display_name(f.spec.family)) + " [" + f.spec.name() + "]";
            out += std::to_string(s.words) + ',' + corpus_detail::csv_escape(model) + ',' + format_fixed(100 * f.test.recall(), 1) + ',' +
                   format_fixed(100 * f.test.f1(), 1) + ',' + format_fixed(100 * f.test.accuracy(), 1) + '\n';
        }
    }
    return out;
}

}  // namespace veracity
