#pragma once

// Multinomial naive Bayes over non-negative term weights.

#include <cmath>
#include <span>

#include <Eigen/Dense>

#include "common.hpp"

namespace veracity {

struct NaiveBayesModel {
    double log_prior_credible = 0.0;
    double log_prior_fake = 0.0;
    Eigen::VectorXd log_prob_credible;
    Eigen::VectorXd log_prob_fake;

    /// log P(fake | x) - log P(credible | x), up to the shared evidence term.
    double score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        return (log_prior_fake - log_prior_credible) + x.dot(log_prob_fake - log_prob_credible);
    }
};

/// Additive (Laplace/Lidstone) smoothing with pseudo-count `alpha`.
inline NaiveBayesModel train_naive_bayes(const Eigen::MatrixXd& x, std::span<const Label> labels, double alpha = 1.0) {
    if (static_cast<std::size_t>(x.rows()) != labels.size()) throw ModelError("naive_bayes: label count mismatch");
    if (!(alpha > 0)) throw ConfigError("naive_bayes: alpha must be positive");
    if ((x.array() < 0.0).any()) throw DataError("naive_bayes: features must be non-negative");
    const Eigen::Index d = x.cols();
    Eigen::VectorXd tc = Eigen::VectorXd::Zero(d), tf = Eigen::VectorXd::Zero(d);
    double nc = 0, nf = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto row = x.row(static_cast<Eigen::Index>(i)).transpose();
        if (labels[i] == Label::fake) {
            tf += row;
            ++nf;
        } else {
            tc += row;
            ++nc;
        }
    }
    NaiveBayesModel m;
    const double n = nc + nf;
    m.log_prior_credible = std::log(nc / n);
    m.log_prior_fake = std::log(nf / n);
    const double dd = static_cast<double>(d);
    m.log_prob_credible = ((tc.array() + alpha) / (tc.sum() + alpha * dd)).log().matrix();
    m.log_prob_fake = ((tf.array() + alpha) / (tf.sum() + alpha * dd)).log().matrix();
    return m;
}

}  // namespace veracity
