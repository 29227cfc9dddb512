#pragma once

// Principal-component reduction keeping the smallest number of components
// whose cumulative explained-variance ratio reaches a target.

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "features.hpp"

namespace veracity {

struct PcaModel {
    Eigen::VectorXd mean;          // d
    Eigen::MatrixXd components;    // k x d, orthonormal rows
    Eigen::VectorXd eigenvalues;   // k, sample-covariance eigenvalues
    std::vector<double> explained_ratio;
    double variance_retained = 0.95;

    Eigen::Index input_dim() const { return mean.size(); }
    Eigen::Index output_dim() const { return components.rows(); }

    double cumulative_ratio() const {
        double s = 0;
        for (double r : explained_ratio) s += r;
        return s;
    }
};

/// Centers by the training mean and eigendecomposes the sample covariance.
/// Component signs are fixed so the largest-magnitude loading is positive.
inline PcaModel fit_pca(const Eigen::MatrixXd& train, double variance_retained = 0.95) {
    if (train.rows() < 2) throw ModelError("PCA needs at least two rows");
    if (train.cols() < 1) throw ModelError("PCA needs at least one column");
    if (!(variance_retained > 0.0 && variance_retained <= 1.0))
        throw ConfigError("variance_retained must lie in (0, 1]");
    if (!train.allFinite()) throw ModelError("PCA input contains non-finite values");

    PcaModel model;
    model.variance_retained = variance_retained;
    model.mean = train.colwise().mean().transpose();
    const Eigen::MatrixXd centered = train.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(train.rows() - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw ModelError("covariance eigendecomposition failed");
    // Ascending order from Eigen; walk it backwards.
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& evecs = solver.eigenvectors();
    const Eigen::Index d = evals.size();
    double total = 0;
    for (Eigen::Index i = 0; i < d; ++i) total += std::max(0.0, evals(i));
    if (!(total > 0.0) || total <= 1e-300) throw ModelError("PCA input has zero variance");

    std::vector<double> ratios;
    double cumulative = 0;
    Eigen::Index k = 0;
    for (Eigen::Index i = d - 1; i >= 0; --i) {
        const double r = std::max(0.0, evals(i)) / total;
        ratios.push_back(r);
        cumulative += r;
        ++k;
        if (cumulative >= variance_retained) break;
    }

    model.components.resize(k, d);
    model.eigenvalues.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        Eigen::VectorXd v = evecs.col(d - 1 - c);
        Eigen::Index arg;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0) v = -v;
        model.components.row(c) = v.transpose();
        model.eigenvalues(c) = std::max(0.0, evals(d - 1 - c));
    }
    model.explained_ratio = std::move(ratios);
    return model;
}

inline Eigen::MatrixXd pca_transform(const PcaModel& pca, const Eigen::MatrixXd& m) {
    if (m.cols() != pca.input_dim())
        throw DataError("PCA expects " + std::to_string(pca.input_dim()) + " columns, got " +
                        std::to_string(m.cols()));
    return (m.rowwise() - pca.mean.transpose()) * pca.components.transpose();
}

inline Eigen::MatrixXd pca_inverse_transform(const PcaModel& pca, const Eigen::MatrixXd& scores) {
    if (scores.cols() != pca.output_dim()) throw DataError("PCA inverse: component count mismatch");
    return (scores * pca.components).rowwise() + pca.mean.transpose();
}

/// Projects a matrix with the training-fitted model; never refits.
inline FeatureMatrix transform(const PcaModel& pca, const FeatureMatrix& m) {
    FeatureMatrix out;
    out.values = pca_transform(pca, m.values);
    out.labels = m.labels;
    out.ids = m.ids;
    out.words = m.words;
    out.fingerprint = m.fingerprint;
    return out;
}

inline PcaModel fit_pca(const FeatureMatrix& train, double variance_retained = 0.95) {
    return fit_pca(train.values, variance_retained);
}

}  // namespace veracity
