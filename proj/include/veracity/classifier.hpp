#pragma once

// Classifier specs, the default zoo, training/prediction over feature
// matrices, evaluation metrics and the text model format.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"
#include "features.hpp"
#include "kernel_svm.hpp"
#include "linear.hpp"
#include "naive_bayes.hpp"
#include "pca.hpp"
#include "trees.hpp"

namespace veracity {

enum class Family { linear_svm, quadratic_svm, bagged_trees, naive_bayes, logistic };

inline constexpr std::string_view to_string(Family f) {
    switch (f) {
        case Family::linear_svm: return "linear_svm";
        case Family::quadratic_svm: return "quadratic_svm";
        case Family::bagged_trees: return "bagged_trees";
        case Family::naive_bayes: return "naive_bayes";
        case Family::logistic: return "logistic";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (Family f : {Family::linear_svm, Family::quadratic_svm, Family::bagged_trees, Family::naive_bayes,
                     Family::logistic}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

/// Human-readable family name as used in the leaderboard.
inline std::string_view display_name(Family f) {
    switch (f) {
        case Family::linear_svm: return "Linear SVM";
        case Family::quadratic_svm: return "Quadratic SVM";
        case Family::bagged_trees: return "Bagged Trees";
        case Family::naive_bayes: return "Naive Bayes";
        case Family::logistic: return "Logistic Regression";
    }
    return "?";
}

namespace classifier_detail {

enum class ParamKind { positive_real, nonneg_real, positive_int, nonneg_int, flag };

struct ParamDef {
    std::string_view key;
    ParamKind kind;
    std::string_view fallback;
};

inline std::span<const ParamDef> params_of(Family f) {
    static constexpr ParamDef linear[] = {{"C", ParamKind::positive_real, "1"},
                                          {"max_epochs", ParamKind::positive_int, "5000"},
                                          {"tol", ParamKind::positive_real, "1e-06"}};
    static constexpr ParamDef quad[] = {{"C", ParamKind::positive_real, "1"},
                                        {"coef0", ParamKind::nonneg_real, "1"},
                                        {"gamma", ParamKind::nonneg_real, "0"},
                                        {"tol", ParamKind::positive_real, "0.001"}};
    static constexpr ParamDef trees[] = {{"bootstrap", ParamKind::flag, "1"},
                                         {"max_depth", ParamKind::nonneg_int, "0"},
                                         {"min_leaf", ParamKind::positive_int, "1"},
                                         {"trees", ParamKind::positive_int, "50"}};
    static constexpr ParamDef nb[] = {{"alpha", ParamKind::positive_real, "1"}};
    static constexpr ParamDef logistic[] = {{"C", ParamKind::positive_real, "1"}};
    switch (f) {
        case Family::linear_svm: return linear;
        case Family::quadratic_svm: return quad;
        case Family::bagged_trees: return trees;
        case Family::naive_bayes: return nb;
        case Family::logistic: return logistic;
    }
    return {};
}

inline std::string canonical_value(Family f, const ParamDef& def, std::string_view raw) {
    const auto where = std::string(to_string(f)) + ": parameter '" + std::string(def.key) + "'";
    try {
        switch (def.kind) {
            case ParamKind::positive_real:
            case ParamKind::nonneg_real: {
                const double v = parse_double(raw);
                if (!std::isfinite(v) || v < 0 || (def.kind == ParamKind::positive_real && v == 0))
                    throw ConfigError(where + " out of range: " + std::string(raw));
                return format_double(v);
            }
            case ParamKind::positive_int:
            case ParamKind::nonneg_int: {
                const long v = parse_int<long>(raw);
                if (v < 0 || (def.kind == ParamKind::positive_int && v == 0))
                    throw ConfigError(where + " out of range: " + std::string(raw));
                return std::to_string(v);
            }
            case ParamKind::flag:
                if (raw == "1" || raw == "true") return "1";
                if (raw == "0" || raw == "false") return "0";
                throw ConfigError(where + " must be 0 or 1");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error&) {
        throw ConfigError(where + " is not a number: " + std::string(raw));
    }
    return std::string(raw);
}

}  // namespace classifier_detail

/// A classifier family plus hyperparameters. Parameters equal to their
/// defaults are dropped, so every configuration has one canonical name.
struct ClassifierSpec {
    Family family = Family::linear_svm;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;

    ClassifierSpec() = default;
    ClassifierSpec(Family f, std::map<std::string, std::string> p = {}, std::uint64_t s = 0)
        : family(f), params(std::move(p)), seed(s) {
        canonicalize();
    }

    /// "family" or "family:key=value,key=value" with keys in sorted order.
    std::string name() const {
        std::string out(to_string(family));
        char sep = ':';
        for (const auto& [k, v] : params) {
            out.push_back(sep);
            out += k + "=" + v;
            sep = ',';
        }
        return out;
    }

    double real(std::string_view key) const { return parse_double(value(key)); }
    long integer(std::string_view key) const { return parse_int<long>(value(key)); }

    std::string value(std::string_view key) const {
        for (const auto& def : classifier_detail::params_of(family)) {
            if (def.key == key) {
                auto it = params.find(std::string(key));
                return it == params.end() ? std::string(def.fallback) : it->second;
            }
        }
        throw ConfigError(std::string(to_string(family)) + " has no parameter '" + std::string(key) + "'");
    }

    static ClassifierSpec parse(std::string_view text, std::uint64_t seed = 0) {
        text = trim(text);
        const auto colon = text.find(':');
        const auto fam_text = text.substr(0, colon);
        auto fam = parse_family(fam_text);
        if (!fam) throw ConfigError("unknown classifier family '" + std::string(fam_text) + "'");
        std::map<std::string, std::string> p;
        if (colon != std::string_view::npos) {
            for (auto kv : split(text.substr(colon + 1), ',')) {
                kv = trim(kv);
                if (kv.empty()) continue;
                const auto eq = kv.find('=');
                if (eq == std::string_view::npos)
                    throw ConfigError("classifier parameter '" + std::string(kv) + "' needs key=value");
                p[std::string(trim(kv.substr(0, eq)))] = std::string(trim(kv.substr(eq + 1)));
            }
        }
        return ClassifierSpec(*fam, std::move(p), seed);
    }

    bool operator==(const ClassifierSpec&) const = default;

private:
    void canonicalize() {
        std::map<std::string, std::string> out;
        for (const auto& [k, v] : params) {
            const auto defs = classifier_detail::params_of(family);
            auto it = std::find_if(defs.begin(), defs.end(), [&](const auto& d) { return d.key == k; });
            if (it == defs.end())
                throw ConfigError(std::string(to_string(family)) + " has no parameter '" + k + "'");
            auto canon = classifier_detail::canonical_value(family, *it, v);
            if (canon != classifier_detail::canonical_value(family, *it, it->fallback)) out[k] = std::move(canon);
        }
        params = std::move(out);
    }
};

/// 21 classifier specs over the five families.
inline std::vector<ClassifierSpec> default_zoo(std::uint64_t seed) {
    std::vector<ClassifierSpec> zoo;
    for (const char* c : {"0.001", "0.01", "0.1", "1", "10"}) zoo.emplace_back(Family::linear_svm, std::map<std::string, std::string>{{"C", c}}, seed);
    for (const char* c : {"0.1", "1", "10"}) {
        for (const char* coef0 : {"1", "10"})
            zoo.emplace_back(Family::quadratic_svm, std::map<std::string, std::string>{{"C", c}, {"coef0", coef0}}, seed);
    }
    for (const char* depth : {"0", "12"}) {
        for (const char* leaf : {"1", "5"})
            zoo.emplace_back(Family::bagged_trees, std::map<std::string, std::string>{{"max_depth", depth}, {"min_leaf", leaf}}, seed);
    }
    for (const char* a : {"1", "0.1"}) zoo.emplace_back(Family::naive_bayes, std::map<std::string, std::string>{{"alpha", a}}, seed);
    for (const char* c : {"0.01", "0.1", "1", "10"}) zoo.emplace_back(Family::logistic, std::map<std::string, std::string>{{"C", c}}, seed);
    return zoo;
}

inline std::vector<ClassifierSpec> parse_zoo(std::string_view list, std::uint64_t seed) {
    std::vector<ClassifierSpec> zoo;
    for (auto item : split(list, ';')) {
        if (!trim(item).empty()) zoo.push_back(ClassifierSpec::parse(item, seed));
    }
    return zoo;
}

// ---------------------------------------------------------------------------
// Preprocessing

struct TrainOptions {
    bool reduce = true;
    double variance_retained = 0.95;
};

/// Optional principal-component projection followed by optional
/// standardization with training statistics.
struct Preprocessor {
    std::optional<PcaModel> pca;
    Eigen::VectorXd center;  // empty: no standardization
    Eigen::VectorXd scale;

    Eigen::VectorXd apply_one(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        Eigen::VectorXd v = pca ? Eigen::VectorXd(pca->components * (x - pca->mean)) : Eigen::VectorXd(x);
        if (center.size() > 0) v = ((v - center).array() / scale.array()).matrix();
        return v;
    }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& m) const {
        Eigen::MatrixXd out(m.rows(), output_dim(m.cols()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) out.row(i) = apply_one(m.row(i).transpose()).transpose();
        return out;
    }

    Eigen::Index output_dim(Eigen::Index input) const { return pca ? pca->output_dim() : input; }

    static Preprocessor identity() { return {}; }

    static Preprocessor fit(const Eigen::MatrixXd& train, const TrainOptions& opt) {
        Preprocessor p;
        if (opt.reduce) p.pca = fit_pca(train, opt.variance_retained);
        const Eigen::MatrixXd z = p.apply(train);
        p.center = z.colwise().mean().transpose();
        p.scale.resize(z.cols());
        const double denom = std::max<double>(1.0, static_cast<double>(z.rows() - 1));
        for (Eigen::Index j = 0; j < z.cols(); ++j) {
            const double sd = std::sqrt((z.col(j).array() - p.center(j)).square().sum() / denom);
            p.scale(j) = sd > 1e-12 ? sd : 1.0;
        }
        return p;
    }
};

inline bool uses_raw_features(Family f) { return f == Family::naive_bayes; }

// ---------------------------------------------------------------------------
// Trained models

using ModelParams = std::variant<LinearModel, KernelSvmModel, BaggedTrees, NaiveBayesModel>;

struct Prediction {
    Label label = Label::credible;
    double score = 0.0;
};

/// Score > 0 means fake; a score of exactly 0 resolves to credible.
inline Label label_for_score(double score) { return score > 0.0 ? Label::fake : Label::credible; }

struct TrainedClassifier {
    ClassifierSpec spec;
    int words = 0;
    std::uint64_t fingerprint = 0;
    Eigen::Index input_dim = 0;
    Preprocessor prep;
    ModelParams params;

    double score_transformed(const Eigen::Ref<const Eigen::VectorXd>& z) const {
        return std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, BaggedTrees> || std::is_same_v<T, NaiveBayesModel>) {
                    return m.score(z);
                } else {
                    return m.decision(z);
                }
            },
            params);
    }

    Prediction predict_raw(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        if (x.size() != input_dim)
            throw DataError("model expects " + std::to_string(input_dim) + " features, got " + std::to_string(x.size()));
        const double s = score_transformed(prep.apply_one(x));
        return {label_for_score(s), s};
    }

    void check_space(std::uint64_t fp, int x_words) const {
        if (fp != fingerprint)
            throw DataError("vocabulary fingerprint mismatch: model " + hex64(fingerprint) + ", input " + hex64(fp));
        if (x_words != words)
            throw DataError("word count mismatch: model X=" + std::to_string(words) + ", input X=" + std::to_string(x_words));
    }
};

inline TrainedClassifier train_classifier(const ClassifierSpec& spec, const FeatureMatrix& train,
                                          const Preprocessor& shared) {
    train.validate();
    if (train.rows() == 0) throw ModelError("empty training set");
    if (train.count(Label::fake) == 0 || train.count(Label::credible) == 0)
        throw ModelError("training set holds a single class");
    if (!all_finite(train.values)) throw ModelError("training features contain non-finite values");

    TrainedClassifier tc;
    tc.spec = spec;
    tc.words = train.words;
    tc.fingerprint = train.fingerprint;
    tc.input_dim = train.cols();
    tc.prep = uses_raw_features(spec.family) ? Preprocessor::identity() : shared;
    const Eigen::MatrixXd z = tc.prep.apply(train.values);
    const std::span<const Label> y(train.labels);

    switch (spec.family) {
        case Family::linear_svm: {
            LinearSvmParams p;
            p.c = spec.real("C");
            p.tolerance = spec.real("tol");
            p.max_epochs = static_cast<int>(spec.integer("max_epochs"));
            p.seed = spec.seed;
            tc.params = train_linear_svm(z, y, p);
            break;
        }
        case Family::quadratic_svm: {
            KernelSvmParams p;
            p.c = spec.real("C");
            p.coef0 = spec.real("coef0");
            p.gamma = spec.real("gamma");
            p.tolerance = spec.real("tol");
            tc.params = train_kernel_svm(z, y, p);
            break;
        }
        case Family::bagged_trees: {
            BaggingParams p;
            p.trees = static_cast<int>(spec.integer("trees"));
            p.bootstrap = spec.integer("bootstrap") != 0;
            p.seed = spec.seed;
            p.tree.max_depth = static_cast<int>(spec.integer("max_depth"));
            p.tree.min_leaf = static_cast<double>(spec.integer("min_leaf"));
            p.tree.min_split = 2.0 * p.tree.min_leaf;
            tc.params = fit_bagged_trees(z, y, p);
            break;
        }
        case Family::naive_bayes:
            tc.params = train_naive_bayes(z, y, spec.real("alpha"));
            break;
        case Family::logistic: {
            LogisticParams p;
            p.c = spec.real("C");
            tc.params = train_logistic(z, y, p);
            break;
        }
    }
    return tc;
}

inline TrainedClassifier train_classifier(const ClassifierSpec& spec, const FeatureMatrix& train,
                                          const TrainOptions& options = {}) {
    if (!all_finite(train.values)) throw ModelError("training features contain non-finite values");
    const auto prep = uses_raw_features(spec.family) ? Preprocessor::identity() : Preprocessor::fit(train.values, options);
    return train_classifier(spec, train, prep);
}

inline Prediction predict(const TrainedClassifier& model, const FeatureVector& v) {
    model.check_space(v.fingerprint, v.words);
    const Eigen::Map<const Eigen::VectorXd> x(v.values.data(), static_cast<Eigen::Index>(v.values.size()));
    return model.predict_raw(x);
}

/// Row-by-row, so batch results equal single predictions exactly.
inline std::vector<Prediction> predict(const TrainedClassifier& model, const FeatureMatrix& m) {
    model.check_space(m.fingerprint, m.words);
    std::vector<Prediction> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(model.predict_raw(m.values.row(i).transpose()));
    return out;
}

// ---------------------------------------------------------------------------
// Metrics

/// Confusion counts with fake as the positive class.
struct Metrics {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::size_t n() const { return tp + fp + fn + tn; }
    double accuracy() const { return n() ? static_cast<double>(tp + tn) / static_cast<double>(n()) : 0.0; }
    double precision() const { return tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0; }
    double recall() const { return tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0; }
    double f1() const {
        const double p = precision(), r = recall();
        return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
    }
    double fake_accuracy() const { return recall(); }
    double credible_accuracy() const { return tn + fp ? static_cast<double>(tn) / static_cast<double>(tn + fp) : 0.0; }
    /// Unweighted mean of the two per-class recalls.
    double pooled_recall() const { return (fake_accuracy() + credible_accuracy()) / 2.0; }

    bool operator==(const Metrics&) const = default;
};

inline Metrics compute_metrics(std::span<const Label> truth, std::span<const Label> predicted) {
    if (truth.size() != predicted.size()) throw DataError("metrics: length mismatch");
    Metrics m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool t = truth[i] == Label::fake, p = predicted[i] == Label::fake;
        if (t && p) ++m.tp;
        else if (!t && p) ++m.fp;
        else if (t && !p) ++m.fn;
        else ++m.tn;
    }
    return m;
}

inline Metrics evaluate(const TrainedClassifier& model, const FeatureMatrix& m) {
    m.validate();
    if (m.rows() == 0) throw DataError("cannot evaluate on an empty matrix");
    const auto preds = predict(model, m);
    std::vector<Label> labels;
    labels.reserve(preds.size());
    for (const auto& p : preds) labels.push_back(p.label);
    return compute_metrics(m.labels, labels);
}

// ---------------------------------------------------------------------------
// Model file

inline constexpr int kModelFormatVersion = 1;

namespace model_io {

inline void put(std::string& out, std::string_view key, const Eigen::Ref<const Eigen::VectorXd>& v) {
    out += key;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(' ');
        out += format_double(v(i));
    }
    out.push_back('\n');
}

inline void put(std::string& out, std::string_view key, std::string_view value) {
    out += key;
    out.push_back(' ');
    out += value;
    out.push_back('\n');
}

class Reader {
public:
    explicit Reader(std::string_view text) : lines_(split(text, '\n')) {}

    /// Fields after `key` on the next line.
    std::vector<std::string_view> expect(std::string_view key) {
        while (pos_ < lines_.size() && trim(lines_[pos_]).empty()) ++pos_;
        if (pos_ >= lines_.size()) throw DataError("model file truncated: expected '" + std::string(key) + "'");
        const auto line = lines_[pos_++];
        std::vector<std::string_view> fields;
        for (auto f : split(line, ' ')) {
            if (!f.empty()) fields.push_back(f);
        }
        if (fields.empty() || fields[0] != key)
            throw DataError("model file line " + std::to_string(pos_) + ": expected '" + std::string(key) + "'");
        fields.erase(fields.begin());
        return fields;
    }

    std::string_view one(std::string_view key) {
        auto f = expect(key);
        if (f.size() != 1) throw DataError("model file: '" + std::string(key) + "' takes one value");
        return f[0];
    }

    Eigen::VectorXd vec(std::string_view key, Eigen::Index expected = -1) {
        auto f = expect(key);
        if (expected >= 0 && static_cast<Eigen::Index>(f.size()) != expected)
            throw DataError("model file: '" + std::string(key) + "' has " + std::to_string(f.size()) + " values, expected " +
                            std::to_string(expected));
        Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(f[i]);
        return v;
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t pos_ = 0;
};

}  // namespace model_io

/// Versioned text format; doubles are written in shortest round-trip form
/// so save(load(save(m))) == save(m).
inline std::string save_model(const TrainedClassifier& m) {
    using model_io::put;
    std::string out = "veracity-model " + std::to_string(kModelFormatVersion) + "\n";
    put(out, "family", to_string(m.spec.family));
    put(out, "spec", m.spec.name());
    put(out, "seed", std::to_string(m.spec.seed));
    put(out, "words", std::to_string(m.words));
    put(out, "fingerprint", hex64(m.fingerprint));
    put(out, "input_dim", std::to_string(m.input_dim));
    const Eigen::Index k = m.prep.pca ? m.prep.pca->output_dim() : 0;
    put(out, "components", std::to_string(k));
    if (m.prep.pca) {
        const auto& p = *m.prep.pca;
        put(out, "pca_variance", format_double(p.variance_retained));
        put(out, "pca_mean", p.mean);
        put(out, "pca_eigenvalues", p.eigenvalues);
        put(out, "pca_ratio", Eigen::Map<const Eigen::VectorXd>(p.explained_ratio.data(), static_cast<Eigen::Index>(p.explained_ratio.size())));
        for (Eigen::Index r = 0; r < k; ++r) put(out, "pca_row", p.components.row(r).transpose());
    }
    put(out, "standardize", m.prep.center.size() > 0 ? "1" : "0");
    if (m.prep.center.size() > 0) {
        put(out, "center", m.prep.center);
        put(out, "scale", m.prep.scale);
    }
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LinearModel>) {
                put(out, "weights", p.weights);
                put(out, "bias", format_double(p.bias));
            } else if constexpr (std::is_same_v<T, KernelSvmModel>) {
                put(out, "kernel", format_double(p.gamma) + " " + format_double(p.coef0) + " " + std::to_string(p.degree));
                put(out, "bias", format_double(p.bias));
                put(out, "support", std::to_string(p.support.rows()));
                for (Eigen::Index r = 0; r < p.support.rows(); ++r) {
                    Eigen::VectorXd row(p.support.cols() + 1);
                    row(0) = p.coef(r);
                    row.tail(p.support.cols()) = p.support.row(r).transpose();
                    put(out, "sv", row);
                }
            } else if constexpr (std::is_same_v<T, BaggedTrees>) {
                put(out, "trees", std::to_string(p.trees.size()));
                for (const auto& t : p.trees) {
                    put(out, "tree", std::to_string(t.nodes.size()));
                    for (const auto& n : t.nodes) {
                        put(out, "node", std::to_string(n.feature) + " " + format_double(n.threshold) + " " +
                                             std::to_string(n.left) + " " + std::to_string(n.right) + " " +
                                             format_double(n.fake_fraction));
                    }
                }
            } else {
                put(out, "prior", format_double(p.log_prior_credible) + " " + format_double(p.log_prior_fake));
                put(out, "log_prob_credible", p.log_prob_credible);
                put(out, "log_prob_fake", p.log_prob_fake);
            }
        },
        m.params);
    out += "end\n";
    return out;
}

inline TrainedClassifier load_model(std::string_view text) {
    model_io::Reader r(text);
    const auto version = r.one("veracity-model");
    if (version != std::to_string(kModelFormatVersion))
        throw DataError("unsupported model format version '" + std::string(version) + "'");
    TrainedClassifier m;
    const auto family = parse_family(r.one("family"));
    if (!family) throw DataError("model file: unknown family");
    const auto spec_name = std::string(r.one("spec"));
    const auto seed = parse_int<std::uint64_t>(r.one("seed"));
    m.spec = ClassifierSpec::parse(spec_name, seed);
    if (m.spec.family != *family) throw DataError("model file: family and spec disagree");
    m.words = parse_int<int>(r.one("words"));
    m.fingerprint = parse_hex64(r.one("fingerprint"));
    m.input_dim = parse_int<Eigen::Index>(r.one("input_dim"));
    const auto k = parse_int<Eigen::Index>(r.one("components"));
    const Eigen::Index d = m.input_dim;
    if (k > 0) {
        PcaModel p;
        p.variance_retained = parse_double(r.one("pca_variance"));
        p.mean = r.vec("pca_mean", d);
        p.eigenvalues = r.vec("pca_eigenvalues", k);
        const Eigen::VectorXd ratio = r.vec("pca_ratio", k);
        p.explained_ratio.assign(ratio.data(), ratio.data() + ratio.size());
        p.components.resize(k, d);
        for (Eigen::Index row = 0; row < k; ++row) p.components.row(row) = r.vec("pca_row", d).transpose();
        m.prep.pca = std::move(p);
    }
    const Eigen::Index z = k > 0 ? k : d;
    if (r.one("standardize") == "1") {
        m.prep.center = r.vec("center", z);
        m.prep.scale = r.vec("scale", z);
    }
    switch (*family) {
        case Family::linear_svm:
        case Family::logistic: {
            LinearModel lm;
            lm.weights = r.vec("weights", z);
            lm.bias = parse_double(r.one("bias"));
            m.params = std::move(lm);
            break;
        }
        case Family::quadratic_svm: {
            KernelSvmModel km;
            const auto kf = r.expect("kernel");
            if (kf.size() != 3) throw DataError("model file: 'kernel' takes three values");
            km.gamma = parse_double(kf[0]);
            km.coef0 = parse_double(kf[1]);
            km.degree = parse_int<int>(kf[2]);
            km.bias = parse_double(r.one("bias"));
            const auto n = parse_int<Eigen::Index>(r.one("support"));
            km.support.resize(n, z);
            km.coef.resize(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto row = r.vec("sv", z + 1);
                km.coef(i) = row(0);
                km.support.row(i) = row.tail(z).transpose();
            }
            m.params = std::move(km);
            break;
        }
        case Family::bagged_trees: {
            BaggedTrees bt;
            const auto count = parse_int<std::size_t>(r.one("trees"));
            for (std::size_t t = 0; t < count; ++t) {
                DecisionTree tree;
                const auto nodes = parse_int<std::size_t>(r.one("tree"));
                for (std::size_t i = 0; i < nodes; ++i) {
                    const auto f = r.expect("node");
                    if (f.size() != 5) throw DataError("model file: 'node' takes five values");
                    TreeNode n;
                    n.feature = parse_int<int>(f[0]);
                    n.threshold = parse_double(f[1]);
                    n.left = parse_int<int>(f[2]);
                    n.right = parse_int<int>(f[3]);
                    n.fake_fraction = parse_double(f[4]);
                    const auto limit = static_cast<int>(nodes);
                    if (n.feature >= z || (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= limit || n.right >= limit)))
                        throw DataError("model file: tree node out of range");
                    tree.nodes.push_back(n);
                }
                if (tree.nodes.empty()) throw DataError("model file: empty tree");
                bt.trees.push_back(std::move(tree));
            }
            m.params = std::move(bt);
            break;
        }
        case Family::naive_bayes: {
            NaiveBayesModel nb;
            const auto pf = r.expect("prior");
            if (pf.size() != 2) throw DataError("model file: 'prior' takes two values");
            nb.log_prior_credible = parse_double(pf[0]);
            nb.log_prior_fake = parse_double(pf[1]);
            nb.log_prob_credible = r.vec("log_prob_credible", z);
            nb.log_prob_fake = r.vec("log_prob_fake", z);
            m.params = std::move(nb);
            break;
        }
    }
    r.expect("end");
    return m;
}

}  // namespace veracity
