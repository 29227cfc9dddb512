#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <vector>

#include "veracity/porter.hpp"

using veracity::stem;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

TEST(Porter, ReferenceVocabularyAgreement) {
    const auto voc = read_lines(std::string(VERACITY_TEST_DATA) + "/porter_voc.txt");
    const auto expected = read_lines(std::string(VERACITY_TEST_DATA) + "/porter_output.txt");
    ASSERT_EQ(voc.size(), expected.size());
    ASSERT_GE(voc.size(), 1000u);
    std::size_t agree = 0;
    std::vector<std::string> misses;
    for (std::size_t i = 0; i < voc.size(); ++i) {
        if (stem(voc[i]) == expected[i]) {
            ++agree;
        } else if (misses.size() < 10) {
            misses.push_back(voc[i] + " -> " + stem(voc[i]) + " (want " + expected[i] + ")");
        }
    }
    const double rate = static_cast<double>(agree) / static_cast<double>(voc.size());
    for (const auto& m : misses) ADD_FAILURE() << m;
    EXPECT_GE(rate, 0.999);
}

TEST(Porter, NeverLengthensReferenceWords) {
    for (const auto& w : read_lines(std::string(VERACITY_TEST_DATA) + "/porter_voc.txt"))
        ASSERT_LE(stem(w).size(), w.size()) << w;
}

TEST(Porter, InflectionsShareRoot) {
    EXPECT_EQ(stem("decided"), stem("decide"));
    EXPECT_EQ(stem("deciding"), stem("decide"));
    EXPECT_EQ(stem("decide"), "decid");
}

TEST(Porter, KnownVectors) {
    EXPECT_EQ(stem("running"), "run");
    EXPECT_EQ(stem("caresses"), "caress");
    EXPECT_EQ(stem("ponies"), "poni");
    EXPECT_EQ(stem("relational"), "relat");
    EXPECT_EQ(stem("generalization"), "gener");
    EXPECT_EQ(stem("hopeful"), "hope");
    EXPECT_EQ(stem("adjustable"), "adjust");
}

TEST(Porter, ShortWordsUnchanged) {
    EXPECT_EQ(stem("a"), "a");
    EXPECT_EQ(stem("is"), "is");
    EXPECT_EQ(stem(""), "");
}
