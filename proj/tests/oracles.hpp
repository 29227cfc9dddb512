#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls into the library's statistics code.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Pearson statistic of a 2x2 table written out cell by cell.
inline double pearson_2x2(double a, double b, double c, double d) {
    const double n = a + b + c + d;
    const double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
    const double cells[4] = {a, b, c, d};
    const double expect[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
    double s = 0;
    for (int i = 0; i < 4; ++i) s += (cells[i] - expect[i]) * (cells[i] - expect[i]) / expect[i];
    return s;
}

struct PermutationResult {
    double p = 0;      // P(T > t) + P(T = t) / 2
    double p_ge = 0;   // P(T >= t)
};

// Monte-Carlo permutation test of independence for a 2x2 table. The n
// individuals keep their row membership; their column labels are shuffled,
// so both margins stay fixed. Ties in the statistic are counted half.
inline PermutationResult permutation_2x2(std::array<long, 4> t, long samples, std::uint64_t seed) {
    const long a = t[0], b = t[1], c = t[2], d = t[3];
    const long n = a + b + c + d;
    const long row1 = a + b;
    const double observed = pearson_2x2(static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
                                        static_cast<double>(d));
    std::vector<int> col(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = i < a + c ? 0 : 1;
    std::mt19937_64 gen(seed);
    long greater = 0, equal = 0;
    for (long s = 0; s < samples; ++s) {
        // Partial Fisher-Yates: only the first row1 positions matter.
        long first_col0 = 0;
        for (long i = 0; i < row1; ++i) {
            std::uniform_int_distribution<long> pick(i, n - 1);
            std::swap(col[static_cast<std::size_t>(i)], col[static_cast<std::size_t>(pick(gen))]);
            first_col0 += col[static_cast<std::size_t>(i)] == 0;
        }
        const double pa = static_cast<double>(first_col0);
        const double pb = static_cast<double>(row1 - first_col0);
        const double pc = static_cast<double>(a + c - first_col0);
        const double pd = static_cast<double>(n - row1) - pc;
        const double stat = pearson_2x2(pa, pb, pc, pd);
        const double tol = 1e-9 * std::max(1.0, observed);
        if (stat > observed + tol)
            ++greater;
        else if (stat >= observed - tol)
            ++equal;
    }
    PermutationResult r;
    r.p = (static_cast<double>(greater) + 0.5 * static_cast<double>(equal)) / static_cast<double>(samples);
    r.p_ge = static_cast<double>(greater + equal) / static_cast<double>(samples);
    return r;
}

// Exact two-sided two-tailed normal p by direct numerical integration of
// the density (Simpson on [|z|, |z| + 40]); slow but shares nothing with erfc.
inline double two_tailed_normal_by_quadrature(double z) {
    const double lo = std::abs(z), hi = lo + 40.0;
    const int n = 200000;
    const double h = (hi - lo) / n;
    const double k = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
    auto f = [&](double x) { return k * std::exp(-0.5 * x * x); };
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return 2.0 * s * h / 3.0;
}

// Cyclic Jacobi eigensolver for a symmetric matrix, written against plain
// vectors so it shares no code with the library path.
struct Eig {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};

inline Eig jacobi(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    Eig e;
    for (auto i : order) {
        e.values.push_back(a[i][i]);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k][i];
        e.vectors.push_back(col);
    }
    return e;
}

inline std::vector<std::vector<double>> covariance(const Eigen::MatrixXd& m) {
    const auto n = static_cast<std::size_t>(m.rows());
    const auto d = static_cast<std::size_t>(m.cols());
    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) mean[c] += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (auto& x : mean) x /= static_cast<double>(n);
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov[i][j] += (m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) - mean[i]) *
                             (m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) - mean[j]);
    for (auto& row : cov)
        for (auto& x : row) x /= static_cast<double>(n - 1);
    return cov;
}

// Largest principal angle between span(a rows) and span(b rows); both
// inputs have orthonormal rows.
// Sine form (norm of the projection residual) since acos loses precision
// near 1.
inline double max_subspace_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd resid = a - (a * b.transpose()) * b;
    const double s = std::sqrt(std::max(0.0, resid.rowwise().squaredNorm().maxCoeff()));
    return std::asin(std::min(1.0, s));
}

}  // namespace oracle
