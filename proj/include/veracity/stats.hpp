#pragma once

// Normal and chi-square tails, z-tests, chi-square independence and the
// per-word influence ranking.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "vocab.hpp"

namespace veracity {

enum class TestKind { two_prop_z, two_sample_z, chi_square };

inline constexpr std::string_view to_string(TestKind k) {
    switch (k) {
        case TestKind::two_prop_z: return "two_prop_z";
        case TestKind::two_sample_z: return "two_sample_z";
        case TestKind::chi_square: return "chi_square";
    }
    return "?";
}

struct TestResult {
    TestKind kind = TestKind::two_prop_z;
    double statistic = 0.0;
    std::optional<long> df;  // set iff chi_square
    double p_value = 1.0;
    std::vector<std::pair<std::string, double>> inputs;
};

/// Upper tail of the standard normal, P(Z > z).
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// P(|Z| > |z|). Even in z by construction.
inline double two_tailed_p(double z) { return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0))); }

/// Pooled two-proportion z for c1/n1 vs c2/n2.
inline TestResult two_proportion_z(std::uint64_t c1, std::uint64_t n1, std::uint64_t c2, std::uint64_t n2) {
    if (n1 == 0 || n2 == 0) throw DataError("two_proportion_z: sample sizes must be positive");
    if (c1 > n1 || c2 > n2) throw DataError("two_proportion_z: count exceeds sample size");
    const double p1 = static_cast<double>(c1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(c2) / static_cast<double>(n2);
    const double pooled = static_cast<double>(c1 + c2) / static_cast<double>(n1 + n2);
    if (pooled <= 0.0 || pooled >= 1.0)
        throw DataError("two_proportion_z: pooled proportion is " + format_double(pooled) + " (degenerate)");
    const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
    TestResult r;
    r.kind = TestKind::two_prop_z;
    r.statistic = (p1 - p2) / se;
    r.p_value = two_tailed_p(r.statistic);
    r.inputs = {{"c1", static_cast<double>(c1)}, {"n1", static_cast<double>(n1)},
                {"c2", static_cast<double>(c2)}, {"n2", static_cast<double>(n2)}};
    return r;
}

/// Large-sample z for a difference of means with unpooled variances.
inline TestResult two_sample_z(double mean1, double sd1, double n1, double mean2, double sd2, double n2) {
    if (n1 < 2 || n2 < 2) throw DataError("two_sample_z: each sample needs at least two observations");
    if (sd1 < 0 || sd2 < 0) throw DataError("two_sample_z: standard deviations must be non-negative");
    const double var = sd1 * sd1 / n1 + sd2 * sd2 / n2;
    if (!(var > 0)) throw DataError("two_sample_z: zero pooled variance");
    TestResult r;
    r.kind = TestKind::two_sample_z;
    r.statistic = (mean1 - mean2) / std::sqrt(var);
    r.p_value = two_tailed_p(r.statistic);
    r.inputs = {{"mean1", mean1}, {"sd1", sd1}, {"n1", n1}, {"mean2", mean2}, {"sd2", sd2}, {"n2", n2}};
    return r;
}

namespace stats_detail {

// Lower regularized gamma P(a, x) by its power series; good for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 1'000'000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by its continued fraction (modified
// Lentz); good for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1'000'000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace stats_detail

/// Q(a, x) = Gamma(a, x) / Gamma(a).
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0)) throw DataError("regularized_gamma_q: a must be positive");
    if (x < 0) throw DataError("regularized_gamma_q: x must be non-negative");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - stats_detail::gamma_p_series(a, x);
    return stats_detail::gamma_q_fraction(a, x);
}

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
inline double chi_square_sf(double x, long df) {
    if (df < 1) throw DataError("chi_square_sf: df must be at least 1");
    if (x < 0) throw DataError("chi_square_sf: statistic must be non-negative");
    return std::clamp(regularized_gamma_q(0.5 * static_cast<double>(df), 0.5 * x), 0.0, 1.0);
}

using ContingencyTable = std::vector<std::vector<double>>;

/// Pearson statistic with expected counts from the margins.
inline TestResult chi_square_independence(const ContingencyTable& t) {
    if (t.size() < 2) throw DataError("chi_square_independence: need at least two rows");
    const auto cols = t[0].size();
    if (cols < 2) throw DataError("chi_square_independence: need at least two columns");
    std::vector<double> row_sum(t.size(), 0.0), col_sum(cols, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].size() != cols) throw DataError("chi_square_independence: ragged table");
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(t[i][j] >= 0) || !std::isfinite(t[i][j])) throw DataError("chi_square_independence: negative count");
            row_sum[i] += t[i][j];
            col_sum[j] += t[i][j];
            total += t[i][j];
        }
    }
    for (std::size_t i = 0; i < t.size(); ++i)
        if (row_sum[i] <= 0) throw DataError("chi_square_independence: row " + std::to_string(i) + " has zero margin");
    for (std::size_t j = 0; j < cols; ++j)
        if (col_sum[j] <= 0) throw DataError("chi_square_independence: column " + std::to_string(j) + " has zero margin");
    double stat = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double e = row_sum[i] * col_sum[j] / total;
            stat += (t[i][j] - e) * (t[i][j] - e) / e;
        }
    }
    TestResult r;
    r.kind = TestKind::chi_square;
    r.statistic = stat;
    r.df = static_cast<long>((t.size() - 1) * (cols - 1));
    r.p_value = chi_square_sf(stat, *r.df);
    r.inputs = {{"rows", static_cast<double>(t.size())}, {"cols", static_cast<double>(cols)}, {"n", total}};
    return r;
}

struct InfluentialWord {
    std::string word;
    double statistic = 0.0;  // z, positive when more frequent on side 1
    double p_value = 1.0;
    std::uint64_t count1 = 0;
    std::uint64_t count2 = 0;
};

/// Per-vocabulary-word two-proportion z between the sides' token rates,
/// ordered by |z| descending then word. Words absent from both sides get
/// z = 0.
inline std::vector<InfluentialWord> influential_words(const Vocabulary& vocab, const WordCounts& side1,
                                                      const WordCounts& side2, std::size_t top_k = 20) {
    const auto n1 = side1.total();
    const auto n2 = side2.total();
    if (n1 == 0 || n2 == 0) throw DataError("influential_words: both sides need tokens");
    std::vector<InfluentialWord> out;
    out.reserve(vocab.size());
    for (const auto& e : vocab.entries()) {
        InfluentialWord w;
        w.word = e.stem;
        w.count1 = side1.at(e.stem);
        w.count2 = side2.at(e.stem);
        if (w.count1 + w.count2 > 0 && w.count1 + w.count2 < n1 + n2) {
            const auto r = two_proportion_z(w.count1, n1, w.count2, n2);
            w.statistic = r.statistic;
            w.p_value = r.p_value;
        }
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const InfluentialWord& a, const InfluentialWord& b) {
        const double za = std::abs(a.statistic), zb = std::abs(b.statistic);
        if (za != zb) return za > zb;
        return a.word < b.word;
    });
    if (top_k > 0 && out.size() > top_k) out.resize(top_k);
    return out;
}

/// One row of the stats report.
struct StatRow {
    std::string feature;
    TestResult result;
};

/// `feature,statistic,df,p` with shortest round-trip numbers; df is empty
/// for z-tests.
inline std::string render_stats_csv(const std::vector<StatRow>& rows) {
    std::string out = "feature,statistic,df,p\n";
    for (const auto& r : rows) {
        out += r.feature + "," + format_double(r.result.statistic) + "," +
               (r.result.df ? std::to_string(*r.result.df) : std::string()) + "," + format_double(r.result.p_value) + "\n";
    }
    return out;
}

}  // namespace veracity
