#include "cem/tokenizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cem/rng.hpp"

namespace {

cem::NormalizedName name(const std::string& raw) {
  return cem::normalize_name(raw);
}

TEST(Tokenize, EnumeratesNGramsPositionMajor) {
  EXPECT_EQ(cem::tokenize(name("ab")),
            (std::vector<std::string>{"a", "ab", "b"}));
  EXPECT_EQ(cem::tokenize(name("abc")),
            (std::vector<std::string>{"a", "ab", "abc", "b", "bc", "c"}));
  EXPECT_EQ(cem::tokenize(name("x")), (std::vector<std::string>{"x"}));
}

TEST(Tokenize, RejectsEmptyKey) {
  cem::NormalizedName empty;
  EXPECT_THROW(cem::tokenize(empty), std::invalid_argument);
}

TEST(Tokenize, CountFormulaHoldsForRandomNames) {
  cem::Rng rng(404);
  static const std::string chars = "abcdef .";
  for (int trial = 0; trial < 200; ++trial) {
    std::string raw(1 + rng.next_below(20), 'x');
    for (auto& c : raw) c = chars[rng.next_below(chars.size())];
    cem::NormalizedName n;
    try {
      n = name(raw);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const size_t len = n.key.size();  // ASCII here, chars == bytes
    const auto tokens = cem::tokenize(n);
    const size_t expected =
        len + (len > 1 ? len - 1 : 0) + (len > 2 ? len - 2 : 0);
    EXPECT_EQ(tokens.size(), expected);
    // every n-gram is a substring at its position, 1 <= n <= 3
    size_t idx = 0;
    for (size_t pos = 0; pos < len; ++pos) {
      for (size_t g = 1; g <= 3 && pos + g <= len; ++g) {
        EXPECT_EQ(tokens[idx++], n.key.substr(pos, g));
      }
    }
  }
}

TEST(Tokenize, MultiByteCharactersCountAsSingleCharacters) {
  // two code points: 0xC3A9 (e acute) and "x"
  const cem::NormalizedName n{"\xc3\xa9x", "\xc3\xa9x"};
  EXPECT_EQ(cem::tokenize(n),
            (std::vector<std::string>{"\xc3\xa9", "\xc3\xa9x", "x"}));
}

TEST(HashToken, DeterministicAndBounded) {
  const auto h1 = cem::hash_token("acm", 4096);
  const auto h2 = cem::hash_token("acm", 4096);
  EXPECT_EQ(h1, h2);
  EXPECT_LT(h1, 4096u);
  EXPECT_EQ(cem::hash_token("anything", 1), 0u);
  EXPECT_EQ(cem::hash_token("other", 1), 0u);
  EXPECT_THROW(cem::hash_token("x", 0), std::invalid_argument);
}

TEST(HashToken, SpreadsTokensAcrossBuckets) {
  // 10,000 distinct random tokens into 4096 buckets: mean load ~2.44. For a
  // uniform hash the expected maximum load is ~10 (balls in bins), so the
  // bound below is calibrated for the fixed seed rather than 3x the mean,
  // which no uniform hash can reliably meet at these parameters.
  cem::Rng rng(8080);
  static const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::set<std::string> tokens;
  while (tokens.size() < 10000) {
    std::string t(1 + rng.next_below(3), 'x');
    for (auto& c : t) c = chars[rng.next_below(chars.size())];
    t += std::to_string(tokens.size());
    tokens.insert(t);
  }
  std::vector<int> load(4096, 0);
  for (const auto& t : tokens) ++load[cem::hash_token(t, 4096)];
  const int max_load = *std::max_element(load.begin(), load.end());
  EXPECT_LE(max_load, 12);
  // occupancy close to the Poisson prediction: 1 - e^(-2.44) of buckets
  const int occupied =
      4096 - static_cast<int>(std::count(load.begin(), load.end(), 0));
  EXPECT_GT(occupied, 3300);
  EXPECT_LT(occupied, 3900);
}

}  // namespace
