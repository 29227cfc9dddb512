#pragma once

// Linear models: L2-regularized hinge-loss SVM (dual coordinate descent)
// and L2-regularized logistic regression (damped Newton), plus the smooth
// objectives used for gradient verification.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"

namespace veracity {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct LinearModel {
    Eigen::VectorXd weights;
    double bias = 0.0;

    double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const { return weights.dot(x) + bias; }
};

inline Eigen::VectorXd signed_labels(std::span<const Label> labels) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i)) = sign_of(labels[i]);
    return y;
}

struct ObjectiveValue {
    double value = 0.0;
    Eigen::VectorXd gradient;  // d weights followed by the bias
};

/// 1/2 |w|^2 + C * sum log(1 + exp(-y (w.x + b))); the bias is not
/// regularized.
inline ObjectiveValue logistic_objective(const Eigen::VectorXd& theta, const Eigen::MatrixXd& x,
                                         const Eigen::VectorXd& y, double c) {
    const Eigen::Index d = x.cols();
    const auto w = theta.head(d);
    const double b = theta(d);
    const Eigen::VectorXd margin = (y.array() * ((x * w).array() + b)).matrix();
    ObjectiveValue out;
    out.value = 0.5 * w.squaredNorm();
    Eigen::VectorXd coef(x.rows());  // d loss / d f_i
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double m = margin(i);
        out.value += c * (m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m)));
        const double sigma_neg = m > 0 ? std::exp(-m) / (1.0 + std::exp(-m)) : 1.0 / (1.0 + std::exp(m));
        coef(i) = -c * y(i) * sigma_neg;
    }
    out.gradient.resize(d + 1);
    out.gradient.head(d) = w + x.transpose() * coef;
    out.gradient(d) = coef.sum();
    return out;
}

/// Hinge loss with a quadratic piece of width h below the hinge point:
///   m >= 1         -> 0
///   1-h < m < 1    -> (1-m)^2 / (2h)
///   m <= 1-h       -> 1 - m - h/2
/// Objective 1/2 |w|^2 + C * sum loss(y (w.x + b)).
inline ObjectiveValue smoothed_hinge_objective(const Eigen::VectorXd& theta, const Eigen::MatrixXd& x,
                                               const Eigen::VectorXd& y, double c, double h = 0.5) {
    const Eigen::Index d = x.cols();
    const auto w = theta.head(d);
    const double b = theta(d);
    const Eigen::VectorXd margin = (y.array() * ((x * w).array() + b)).matrix();
    ObjectiveValue out;
    out.value = 0.5 * w.squaredNorm();
    Eigen::VectorXd coef(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double m = margin(i);
        double loss, dloss;
        if (m >= 1.0) {
            loss = 0.0;
            dloss = 0.0;
        } else if (m > 1.0 - h) {
            loss = (1.0 - m) * (1.0 - m) / (2.0 * h);
            dloss = -(1.0 - m) / h;
        } else {
            loss = 1.0 - m - 0.5 * h;
            dloss = -1.0;
        }
        out.value += c * loss;
        coef(i) = c * dloss * y(i);
    }
    out.gradient.resize(d + 1);
    out.gradient.head(d) = w + x.transpose() * coef;
    out.gradient(d) = coef.sum();
    return out;
}

// ---------------------------------------------------------------------------
// Linear SVM

struct LinearSvmParams {
    double c = 1.0;
    double tolerance = 1e-6;
    int max_epochs = 5000;
    std::uint64_t seed = 0;
};

/// Solver diagnostics. `dual_objective` holds 1/2 |w|^2 - sum(alpha) after
/// every epoch and never increases.
struct LinearSvmTrace {
    std::vector<double> dual_objective;
    double primal_objective = 0.0;
    double violation = 0.0;      // max - min projected gradient at exit
    double gradient_norm = 0.0;  // l2 norm of the projected gradient at exit
    int epochs = 0;
    bool converged = false;
};

/// Minimizes 1/2 |w|^2 + C * sum max(0, 1 - y (w.x + b)) with the bias as
/// an extra constant-1 feature, by dual coordinate descent over a seeded
/// permutation each epoch. Stops once the projected-gradient spread drops
/// below the tolerance.
inline LinearModel train_linear_svm(const Eigen::MatrixXd& features, std::span<const Label> labels,
                                    const LinearSvmParams& params, LinearSvmTrace* trace = nullptr) {
    const Eigen::Index n = features.rows();
    const Eigen::Index d = features.cols();
    if (static_cast<std::size_t>(n) != labels.size()) throw ModelError("linear_svm: label count mismatch");
    if (!(params.c > 0)) throw ConfigError("linear_svm: C must be positive");

    RowMatrix x(n, d + 1);
    x.leftCols(d) = features;
    x.col(d).setOnes();
    const Eigen::VectorXd y = signed_labels(labels);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd qii(n);
    for (Eigen::Index i = 0; i < n; ++i) qii(i) = x.row(i).squaredNorm();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Rng rng(params.seed);

    LinearSvmTrace local;
    LinearSvmTrace& tr = trace ? *trace : local;
    tr = {};
    const double c = params.c;

    auto projected_gradient = [&](Eigen::Index i) {
        const double g = y(i) * x.row(i).dot(w) - 1.0;
        if (alpha(i) <= 0.0) return std::min(g, 0.0);
        if (alpha(i) >= c) return std::max(g, 0.0);
        return g;
    };

    for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
        shuffle(order.begin(), order.end(), rng);
        double pg_max = -std::numeric_limits<double>::infinity();
        double pg_min = std::numeric_limits<double>::infinity();
        for (auto i : order) {
            if (qii(i) <= 0.0) continue;
            const double g = y(i) * x.row(i).dot(w) - 1.0;
            double pg = g;
            if (alpha(i) <= 0.0) {
                pg = std::min(g, 0.0);
            } else if (alpha(i) >= c) {
                pg = std::max(g, 0.0);
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            if (std::abs(pg) > 1e-14) {
                const double old = alpha(i);
                alpha(i) = std::clamp(old - g / qii(i), 0.0, c);
                w.noalias() += ((alpha(i) - old) * y(i)) * x.row(i).transpose();
            }
        }
        ++tr.epochs;
        tr.dual_objective.push_back(0.5 * w.squaredNorm() - alpha.sum());
        if (pg_max - pg_min <= params.tolerance) {
            // The in-pass spread mixes iterates; confirm on the final one.
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double pg = projected_gradient(i);
                hi = std::max(hi, pg);
                lo = std::min(lo, pg);
            }
            if (hi - lo <= params.tolerance) {
                tr.converged = true;
                break;
            }
        }
    }

    // Exit diagnostics on the final iterate.
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    double sq = 0.0;
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pg = projected_gradient(i);
        pg_max = std::max(pg_max, pg);
        pg_min = std::min(pg_min, pg);
        sq += pg * pg;
        hinge += std::max(0.0, 1.0 - y(i) * x.row(i).dot(w));
    }
    tr.violation = n > 0 ? pg_max - pg_min : 0.0;
    tr.gradient_norm = std::sqrt(sq);
    tr.primal_objective = 0.5 * w.squaredNorm() + c * hinge;

    LinearModel model;
    model.weights = w.head(d);
    model.bias = w(d);
    return model;
}

// ---------------------------------------------------------------------------
// Logistic regression

struct LogisticParams {
    double c = 1.0;
    double tolerance = 1e-8;
    int max_iterations = 100;
};

/// Damped Newton iterations on logistic_objective with backtracking line
/// search. Converges when the gradient's max-norm falls below tolerance
/// scaled by max(1, C * n).
inline LinearModel train_logistic(const Eigen::MatrixXd& x, std::span<const Label> labels,
                                  const LogisticParams& params) {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    if (static_cast<std::size_t>(n) != labels.size()) throw ModelError("logistic: label count mismatch");
    if (!(params.c > 0)) throw ConfigError("logistic: C must be positive");
    const Eigen::VectorXd y = signed_labels(labels);

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
    auto current = logistic_objective(theta, x, y, params.c);
    const double scale = std::max(1.0, params.c * static_cast<double>(n));

    for (int it = 0; it < params.max_iterations; ++it) {
        if (current.gradient.cwiseAbs().maxCoeff() <= params.tolerance * scale) break;
        // Hessian: diag(1,..,1,0) + C * [x 1]^T D [x 1]
        Eigen::VectorXd dvec(n);
        const Eigen::VectorXd f = (x * theta.head(d)).array() + theta(d);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double p = 1.0 / (1.0 + std::exp(-f(i)));
            dvec(i) = params.c * p * (1.0 - p);
        }
        Eigen::MatrixXd xa(n, d + 1);
        xa.leftCols(d) = x;
        xa.col(d).setOnes();
        Eigen::MatrixXd h = xa.transpose() * dvec.asDiagonal() * xa;
        h.diagonal().head(d).array() += 1.0;
        h(d, d) += 1e-12;
        const Eigen::VectorXd step = h.ldlt().solve(-current.gradient);
        const double slope = current.gradient.dot(step);
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            Eigen::VectorXd cand = theta + t * step;
            auto next = logistic_objective(cand, x, y, params.c);
            if (next.value <= current.value + 1e-4 * t * slope) {
                theta = std::move(cand);
                current = std::move(next);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
    }
    LinearModel model;
    model.weights = theta.head(d);
    model.bias = theta(d);
    return model;
}

}  // namespace veracity
