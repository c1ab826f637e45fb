#include "cem/baselines.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cem/rng.hpp"

namespace {

using cem::BaselineMetric;
using cem::NormalizedName;

// Independent Ratcliff/Obershelp oracle built on a dense LCS-substring table
// rather than the two-row walk used by the implementation.
size_t oracle_matched(const std::string& x, const std::string& y) {
  if (x.empty() || y.empty()) return 0;
  std::vector<std::vector<size_t>> table(x.size() + 1,
                                         std::vector<size_t>(y.size() + 1, 0));
  size_t best = 0, bi = 0, bj = 0;
  for (size_t i = 1; i <= x.size(); ++i) {
    for (size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1]) {
        table[i][j] = table[i - 1][j - 1] + 1;
        if (table[i][j] > best) {
          best = table[i][j];
          bi = i - best;
          bj = j - best;
        }
      }
    }
  }
  if (best == 0) return 0;
  return best + oracle_matched(x.substr(0, bi), y.substr(0, bj)) +
         oracle_matched(x.substr(bi + best), y.substr(bj + best));
}

double oracle_ratio(std::string x, std::string y) {
  if (x.empty() && y.empty()) return 1.0;
  // same canonical argument order as the implementation
  if (y.size() < x.size() || (y.size() == x.size() && y < x)) std::swap(x, y);
  return 2.0 * static_cast<double>(oracle_matched(x, y)) /
         static_cast<double>(x.size() + y.size());
}

std::string random_name(cem::Rng& rng, size_t max_len) {
  static const std::string chars = "abcdefg .,-";
  std::string s;
  const size_t len = rng.next_below(max_len + 1);
  for (size_t i = 0; i < len; ++i) s += chars[rng.next_below(chars.size())];
  return s;
}

TEST(Levenshtein, KnownDistances) {
  EXPECT_EQ(cem::levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(cem::levenshtein("same", "same"), 0u);
  EXPECT_EQ(cem::levenshtein("", "abc"), 3u);
  EXPECT_EQ(cem::levenshtein("abc", ""), 3u);
}

TEST(Levenshtein, SymmetryAndTriangleInequality) {
  cem::Rng rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_name(rng, 12);
    const auto b = random_name(rng, 12);
    const auto c = random_name(rng, 12);
    EXPECT_EQ(cem::levenshtein(a, b), cem::levenshtein(b, a));
    EXPECT_LE(cem::levenshtein(a, c),
              cem::levenshtein(a, b) + cem::levenshtein(b, c));
  }
}

TEST(EditSimilarity, NormalizedDistance) {
  EXPECT_DOUBLE_EQ(cem::edit_similarity("acme", "acme"), 1.0);
  EXPECT_DOUBLE_EQ(cem::edit_similarity("a", "b"), 0.0);
  EXPECT_DOUBLE_EQ(cem::edit_similarity("", ""), 1.0);
  // 9 insertions over a length-16 target; differs from the matching-blocks
  // ratio on the same strings.
  EXPECT_DOUBLE_EQ(cem::edit_similarity("YANKEES", "NEW YORK YANKEES"),
                   1.0 - 9.0 / 16.0);
}

TEST(Ratio, TableOfKnownSimilarities) {
  EXPECT_NEAR(cem::ratio("YANKEES", "NEW YORK YANKEES"), 0.61, 0.005);
  EXPECT_NEAR(cem::ratio("NEW YORK METS", "NEW YORK YANKEES"), 0.76, 0.005);
  EXPECT_NEAR(cem::ratio("NEW YORK METS", "NEW YORK MEATS"), 0.96, 0.005);
  EXPECT_DOUBLE_EQ(cem::ratio("acme", "acme"), 1.0);
  EXPECT_DOUBLE_EQ(cem::ratio("", ""), 1.0);
  EXPECT_DOUBLE_EQ(cem::ratio("ab", "xy"), 0.0);
}

TEST(PartialRatio, TableOfKnownSimilarities) {
  EXPECT_NEAR(cem::partial_ratio("YANKEES", "NEW YORK YANKEES"), 1.00, 0.005);
  EXPECT_NEAR(cem::partial_ratio("NEW YORK METS", "NEW YORK YANKEES"), 0.69,
              0.005);
  EXPECT_NEAR(cem::partial_ratio("NEW YORK METS", "NEW YORK MEATS"), 0.92,
              0.005);
}

TEST(RatioAndPartial, MatchIndependentOracle) {
  cem::Rng rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    const auto x = random_name(rng, 14);
    const auto y = random_name(rng, 14);
    EXPECT_NEAR(cem::ratio(x, y), oracle_ratio(x, y), 1e-12)
        << "x='" << x << "' y='" << y << "'";

    if (x.empty() && y.empty()) continue;
    const auto& shorter = x.size() <= y.size() ? x : y;
    const auto& longer = x.size() <= y.size() ? y : x;
    double best = 0.0;
    for (size_t s = 0; s + shorter.size() <= longer.size(); ++s) {
      best = std::max(best,
                      oracle_ratio(shorter, longer.substr(s, shorter.size())));
    }
    EXPECT_NEAR(cem::partial_ratio(x, y), best, 1e-12)
        << "x='" << x << "' y='" << y << "'";
  }
}

TEST(RatioAndPartial, SymmetryAndContainment) {
  cem::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_name(rng, 12);
    const auto y = random_name(rng, 12);
    EXPECT_DOUBLE_EQ(cem::ratio(x, y), cem::ratio(y, x));
    EXPECT_DOUBLE_EQ(cem::partial_ratio(x, y), cem::partial_ratio(y, x));
    if (!x.empty()) {
      EXPECT_DOUBLE_EQ(cem::partial_ratio(x, "zz" + x + "qq"), 1.0);
      EXPECT_DOUBLE_EQ(cem::ratio(x, x), 1.0);
    }
  }
}

std::vector<NormalizedName> canonical_names() {
  std::vector<NormalizedName> out;
  for (const char* s : {"Acme Corp", "Beta LLC", "Gamma Inc", "Delta Co"}) {
    out.push_back(cem::normalize_name(s));
  }
  return out;
}

TEST(BaselineRank, ExactMatchRanksFirst) {
  const auto canonicals = canonical_names();
  const auto ranked = cem::baseline_rank(cem::normalize_name("beta llc"),
                                         canonicals, BaselineMetric::kEdit, 3);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].canonical.key, "beta llc");
  EXPECT_DOUBLE_EQ(ranked[0].score, 1.0);
}

TEST(BaselineRank, KLargerThanNReturnsAll) {
  const auto canonicals = canonical_names();
  const auto ranked = cem::baseline_rank(cem::normalize_name("Acme"),
                                         canonicals, BaselineMetric::kRatio, 10);
  EXPECT_EQ(ranked.size(), canonicals.size());
}

TEST(BaselineRank, RandomIsSeedDeterministic) {
  const auto canonicals = canonical_names();
  const auto query = cem::normalize_name("Acme");
  const auto r1 =
      cem::baseline_rank(query, canonicals, BaselineMetric::kRandom, 4, 42);
  const auto r2 =
      cem::baseline_rank(query, canonicals, BaselineMetric::kRandom, 4, 42);
  ASSERT_EQ(r1.size(), r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].canonical.key, r2[i].canonical.key);
    EXPECT_DOUBLE_EQ(r1[i].score, r2[i].score);
  }
  const auto r3 =
      cem::baseline_rank(query, canonicals, BaselineMetric::kRandom, 4, 43);
  bool any_difference = false;
  for (size_t i = 0; i < r1.size(); ++i) {
    if (r1[i].canonical.key != r3[i].canonical.key) any_difference = true;
  }
  EXPECT_TRUE(any_difference);
}

TEST(BaselineRank, TiesBreakByAscendingKey) {
  std::vector<NormalizedName> canonicals = {cem::normalize_name("ay"),
                                            cem::normalize_name("ax")};
  const auto ranked = cem::baseline_rank(cem::normalize_name("ab"), canonicals,
                                         BaselineMetric::kEdit, 2);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_DOUBLE_EQ(ranked[0].score, ranked[1].score);
  EXPECT_EQ(ranked[0].canonical.key, "ax");
  EXPECT_EQ(ranked[1].canonical.key, "ay");
}

TEST(BaselineRank, RejectsEmptyInput) {
  EXPECT_THROW(cem::baseline_rank(cem::normalize_name("a"), {},
                                  BaselineMetric::kEdit, 1),
               std::invalid_argument);
  EXPECT_THROW(cem::baseline_rank(cem::normalize_name("a"), canonical_names(),
                                  BaselineMetric::kEdit, 0),
               std::invalid_argument);
}

}  // namespace
