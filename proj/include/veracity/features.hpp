#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "common.hpp"
#include "vocab.hpp"

namespace veracity {

/// Row-per-article feature values with their labels and provenance.
struct FeatureMatrix {
    Eigen::MatrixXd values;
    std::vector<Label> labels;
    std::vector<std::string> ids;
    int words = 0;
    std::uint64_t fingerprint = 0;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    void validate() const {
        if (static_cast<std::size_t>(values.rows()) != labels.size())
            throw DataError("feature matrix has " + std::to_string(values.rows()) + " rows but " +
                            std::to_string(labels.size()) + " labels");
        if (!ids.empty() && ids.size() != labels.size()) throw DataError("feature matrix id count mismatch");
    }

    std::size_t count(Label l) const {
        return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
    }

    static FeatureMatrix from_vectors(std::span<const FeatureVector> vecs, std::span<const Label> labels) {
        if (vecs.size() != labels.size()) throw DataError("vector/label count mismatch");
        FeatureMatrix m;
        m.labels.assign(labels.begin(), labels.end());
        if (vecs.empty()) return m;
        const auto d = vecs.front().values.size();
        m.values.resize(static_cast<Eigen::Index>(vecs.size()), static_cast<Eigen::Index>(d));
        m.words = vecs.front().words;
        m.fingerprint = vecs.front().fingerprint;
        for (std::size_t r = 0; r < vecs.size(); ++r) {
            const auto& v = vecs[r];
            if (v.values.size() != d || v.fingerprint != m.fingerprint || v.words != m.words)
                throw DataError("feature vectors come from different vector spaces");
            for (std::size_t c = 0; c < d; ++c)
                m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.values[c];
            m.ids.push_back(v.id);
        }
        return m;
    }
};

inline bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace veracity
