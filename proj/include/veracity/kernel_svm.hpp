#pragma once

// Polynomial-kernel SVM trained in the dual by sequential minimal
// optimization with second-order working-set selection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"
#include "linear.hpp"

namespace veracity {

struct KernelSvmParams {
    double c = 1.0;
    double gamma = 0.0;  // 0 selects 1 / feature count
    double coef0 = 1.0;
    int degree = 2;
    double tolerance = 1e-3;
    long max_iterations = 10'000'000;
};

struct KernelSvmModel {
    RowMatrix support;        // support vectors, one per row
    Eigen::VectorXd coef;     // alpha_i * y_i
    double bias = 0.0;
    double gamma = 1.0;
    double coef0 = 1.0;
    int degree = 2;

    double kernel(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) const {
        return std::pow(gamma * a.dot(b) + coef0, degree);
    }

    double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        const Eigen::VectorXd dots = support * x;
        double s = bias;
        for (Eigen::Index i = 0; i < dots.size(); ++i) s += coef(i) * std::pow(gamma * dots(i) + coef0, degree);
        return s;
    }
};

struct KernelSvmTrace {
    long iterations = 0;
    double gap = 0.0;
    bool converged = false;
};

inline KernelSvmModel train_kernel_svm(const Eigen::MatrixXd& x, std::span<const Label> labels,
                                       const KernelSvmParams& params, KernelSvmTrace* trace = nullptr) {
    const Eigen::Index n = x.rows();
    if (static_cast<std::size_t>(n) != labels.size()) throw ModelError("kernel svm: label count mismatch");
    if (!(params.c > 0)) throw ConfigError("kernel svm: C must be positive");
    if (params.degree < 1) throw ConfigError("kernel svm: degree must be >= 1");

    KernelSvmModel model;
    model.gamma = params.gamma > 0 ? params.gamma : 1.0 / static_cast<double>(std::max<Eigen::Index>(1, x.cols()));
    model.coef0 = params.coef0;
    model.degree = params.degree;

    Eigen::MatrixXd k = x * x.transpose();
    k = ((model.gamma * k).array() + model.coef0).pow(model.degree).matrix();
    const Eigen::VectorXd y = signed_labels(labels);
    const double c = params.c;
    constexpr double tau = 1e-12;

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // Q alpha - e
    auto upper = [&](Eigen::Index t) { return alpha(t) >= c; };
    auto lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };

    KernelSvmTrace local;
    KernelSvmTrace& tr = trace ? *trace : local;
    tr = {};

    for (long iter = 0; iter < params.max_iterations; ++iter) {
        double gmax = -std::numeric_limits<double>::infinity();
        Eigen::Index i = -1;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (y(t) > 0) {
                if (!upper(t) && -grad(t) >= gmax) {
                    gmax = -grad(t);
                    i = t;
                }
            } else if (!lower(t) && grad(t) >= gmax) {
                gmax = grad(t);
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index j = -1;
        for (Eigen::Index t = 0; t < n && i >= 0; ++t) {
            if (y(t) > 0) {
                if (lower(t)) continue;
                const double diff = gmax + grad(t);
                gmax2 = std::max(gmax2, grad(t));
                if (diff > 0) {
                    double quad = k(i, i) + k(t, t) - 2.0 * y(i) * k(t, i);
                    if (quad <= 0) quad = tau;
                    const double obj = -(diff * diff) / quad;
                    if (obj <= best) {
                        best = obj;
                        j = t;
                    }
                }
            } else {
                if (upper(t)) continue;
                const double diff = gmax - grad(t);
                gmax2 = std::max(gmax2, -grad(t));
                if (diff > 0) {
                    double quad = k(i, i) + k(t, t) + 2.0 * y(i) * k(t, i);
                    if (quad <= 0) quad = tau;
                    const double obj = -(diff * diff) / quad;
                    if (obj <= best) {
                        best = obj;
                        j = t;
                    }
                }
            }
        }
        tr.gap = gmax + gmax2;
        if (i < 0 || j < 0 || gmax + gmax2 < params.tolerance) {
            tr.converged = true;
            break;
        }
        ++tr.iterations;

        const double qij = y(i) * y(j) * k(i, j);
        const double ai_old = alpha(i);
        const double aj_old = alpha(j);
        if (y(i) != y(j)) {
            double quad = k(i, i) + k(j, j) + 2.0 * qij;
            if (quad <= 0) quad = tau;
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = alpha(i) - alpha(j);
            alpha(i) += delta;
            alpha(j) += delta;
            if (diff > 0) {
                if (alpha(j) < 0) {
                    alpha(j) = 0;
                    alpha(i) = diff;
                }
            } else if (alpha(i) < 0) {
                alpha(i) = 0;
                alpha(j) = -diff;
            }
            if (diff > 0) {
                if (alpha(i) > c) {
                    alpha(i) = c;
                    alpha(j) = c - diff;
                }
            } else if (alpha(j) > c) {
                alpha(j) = c;
                alpha(i) = c + diff;
            }
        } else {
            double quad = k(i, i) + k(j, j) - 2.0 * qij;
            if (quad <= 0) quad = tau;
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = alpha(i) + alpha(j);
            alpha(i) -= delta;
            alpha(j) += delta;
            if (sum > c) {
                if (alpha(i) > c) {
                    alpha(i) = c;
                    alpha(j) = sum - c;
                }
            } else if (alpha(j) < 0) {
                alpha(j) = 0;
                alpha(i) = sum;
            }
            if (sum > c) {
                if (alpha(j) > c) {
                    alpha(j) = c;
                    alpha(i) = sum - c;
                }
            } else if (alpha(i) < 0) {
                alpha(i) = 0;
                alpha(j) = sum;
            }
        }
        const double dai = alpha(i) - ai_old;
        const double daj = alpha(j) - aj_old;
        for (Eigen::Index t = 0; t < n; ++t) {
            grad(t) += y(t) * (y(i) * k(t, i) * dai + y(j) * k(t, j) * daj);
        }
    }

    // Bias from free support vectors, else midpoint of the feasible range.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    int n_free = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = y(t) * grad(t);
        if (upper(t)) {
            if (y(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (lower(t)) {
            if (y(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;
    if (!std::isfinite(rho)) rho = std::isfinite(ub) ? ub : std::isfinite(lb) ? lb : 0.0;
    model.bias = -rho;

    std::vector<Eigen::Index> sv;
    for (Eigen::Index t = 0; t < n; ++t) {
        if (alpha(t) > 0) sv.push_back(t);
    }
    model.support.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
    model.coef.resize(static_cast<Eigen::Index>(sv.size()));
    for (std::size_t s = 0; s < sv.size(); ++s) {
        model.support.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
        model.coef(static_cast<Eigen::Index>(s)) = alpha(sv[s]) * y(sv[s]);
    }
    return model;
}

}  // namespace veracity
