#pragma once

// CART classification trees (Gini impurity, axis-aligned thresholds) and
// bootstrap-aggregated ensembles of them.

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"

namespace veracity {

struct TreeParams {
    int max_depth = 0;       // 0: unlimited
    double min_leaf = 1.0;   // minimum total sample weight per child
    double min_split = 2.0;  // minimum total sample weight to attempt a split
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double fake_fraction = 0.0;  // weighted share of fake samples at the node

    bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
public:
    std::vector<TreeNode> nodes;

    /// Weighted fraction of fake training samples in the reached leaf.
    double predict_fraction(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        int n = 0;
        while (nodes[static_cast<std::size_t>(n)].feature >= 0) {
            const auto& node = nodes[static_cast<std::size_t>(n)];
            n = x(node.feature) <= node.threshold ? node.left : node.right;
        }
        return nodes[static_cast<std::size_t>(n)].fake_fraction;
    }

    bool operator==(const DecisionTree&) const = default;
};

namespace tree_detail {

class Builder {
public:
    Builder(const Eigen::MatrixXd& x, std::span<const Label> labels, std::span<const double> weights,
            const TreeParams& params)
        : x_(x), params_(params) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] > 0) {
                rows_.push_back(static_cast<Eigen::Index>(i));
                w_.push_back(weights[i]);
                fake_.push_back(labels[i] == Label::fake ? 1 : 0);
            }
        }
        const auto m = rows_.size();
        const auto d = static_cast<std::size_t>(x.cols());
        order_.assign(d, std::vector<int>(m));
        for (std::size_t f = 0; f < d; ++f) {
            auto& ord = order_[f];
            std::iota(ord.begin(), ord.end(), 0);
            std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
                return value(a, f) < value(b, f);
            });
        }
        goes_left_.assign(m, 0);
        buffer_.resize(m);
    }

    DecisionTree build() {
        DecisionTree tree;
        if (rows_.empty()) {
            tree.nodes.push_back({});
            return tree;
        }
        grow(tree, 0, rows_.size(), 0);
        return tree;
    }

private:
    const Eigen::MatrixXd& x_;
    TreeParams params_;
    std::vector<Eigen::Index> rows_;
    std::vector<double> w_;
    std::vector<char> fake_;
    std::vector<std::vector<int>> order_;  // per feature, sample slots sorted by value
    std::vector<char> goes_left_;
    std::vector<int> buffer_;

    double value(int sample, std::size_t f) const {
        return x_(rows_[static_cast<std::size_t>(sample)], static_cast<Eigen::Index>(f));
    }

    static double gini(double fake, double total) {
        if (total <= 0) return 0.0;
        const double p = fake / total;
        return 2.0 * p * (1.0 - p);
    }

    int grow(DecisionTree& tree, std::size_t lo, std::size_t hi, int depth) {
        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        double total = 0, fake = 0;
        for (std::size_t s = lo; s < hi; ++s) {
            const int k = order_[0][s];
            total += w_[static_cast<std::size_t>(k)];
            if (fake_[static_cast<std::size_t>(k)]) fake += w_[static_cast<std::size_t>(k)];
        }
        tree.nodes[static_cast<std::size_t>(id)].fake_fraction = total > 0 ? fake / total : 0.0;

        const bool pure = fake <= 0 || fake >= total;
        const bool depth_capped = params_.max_depth > 0 && depth >= params_.max_depth;
        if (pure || depth_capped || total < params_.min_split) return id;

        // Best split over all features; the first strictly better candidate wins.
        const double parent = gini(fake, total) * total;
        double best_score = parent - 1e-12;
        int best_feature = -1;
        std::size_t best_pos = 0;
        double best_threshold = 0;
        for (std::size_t f = 0; f < order_.size(); ++f) {
            const auto& ord = order_[f];
            double lw = 0, lf = 0;
            for (std::size_t s = lo; s + 1 < hi; ++s) {
                const int k = ord[s];
                lw += w_[static_cast<std::size_t>(k)];
                if (fake_[static_cast<std::size_t>(k)]) lf += w_[static_cast<std::size_t>(k)];
                const double v = value(k, f);
                const double next = value(ord[s + 1], f);
                if (!(next > v)) continue;
                const double rw = total - lw;
                if (lw < params_.min_leaf || rw < params_.min_leaf) continue;
                const double score = gini(lf, lw) * lw + gini(fake - lf, rw) * rw;
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_pos = s + 1;
                    best_threshold = v + (next - v) / 2.0;
                    if (!(best_threshold < next)) best_threshold = v;
                }
            }
        }
        if (best_feature < 0) return id;

        const auto& split_order = order_[static_cast<std::size_t>(best_feature)];
        for (std::size_t s = lo; s < hi; ++s) goes_left_[static_cast<std::size_t>(split_order[s])] = s < best_pos;
        for (auto& ord : order_) {
            std::size_t a = lo, b = 0;
            for (std::size_t s = lo; s < hi; ++s) {
                const int k = ord[s];
                if (goes_left_[static_cast<std::size_t>(k)]) ord[a++] = k; else buffer_[b++] = k;
            }
            std::copy(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(b),
                      ord.begin() + static_cast<std::ptrdiff_t>(a));
        }

        const int left = grow(tree, lo, best_pos, depth + 1);
        const int right = grow(tree, best_pos, hi, depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(id)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        return id;
    }
};

}  // namespace tree_detail

/// Fits one CART tree. `weights` are per-row sample weights (bootstrap
/// multiplicities); rows with zero weight are ignored.
inline DecisionTree fit_cart(const Eigen::MatrixXd& x, std::span<const Label> labels, std::span<const double> weights,
                             const TreeParams& params = {}) {
    if (static_cast<std::size_t>(x.rows()) != labels.size() || labels.size() != weights.size())
        throw ModelError("cart: row/label/weight count mismatch");
    return tree_detail::Builder(x, labels, weights, params).build();
}

inline DecisionTree fit_cart(const Eigen::MatrixXd& x, std::span<const Label> labels, const TreeParams& params = {}) {
    std::vector<double> ones(labels.size(), 1.0);
    return fit_cart(x, labels, ones, params);
}

struct BaggingParams {
    int trees = 50;
    bool bootstrap = true;
    std::uint64_t seed = 0;
    TreeParams tree;
};

struct BaggedTrees {
    std::vector<DecisionTree> trees;

    /// (fake votes - credible votes) / trees; a leaf at exactly 0.5 votes
    /// credible.
    double score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        if (trees.empty()) return 0.0;
        int votes = 0;
        for (const auto& t : trees) votes += t.predict_fraction(x) > 0.5 ? 1 : -1;
        return static_cast<double>(votes) / static_cast<double>(trees.size());
    }
};

inline BaggedTrees fit_bagged_trees(const Eigen::MatrixXd& x, std::span<const Label> labels,
                                    const BaggingParams& params) {
    if (params.trees < 1) throw ConfigError("bagged_trees: need at least one tree");
    const auto n = labels.size();
    Rng rng(params.seed);
    BaggedTrees ens;
    std::vector<double> weights(n);
    for (int b = 0; b < params.trees; ++b) {
        if (params.bootstrap) {
            std::fill(weights.begin(), weights.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) weights[uniform_index(rng, n)] += 1.0;
        } else {
            std::fill(weights.begin(), weights.end(), 1.0);
        }
        ens.trees.push_back(fit_cart(x, labels, weights, params.tree));
    }
    return ens;
}

}  // namespace veracity
