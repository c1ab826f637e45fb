#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cem/names.hpp"
#include "cem/rng.hpp"

namespace cem {

// Minimum number of single-character insertions, deletions and
// substitutions transforming x into y. Two-row dynamic program.
inline size_t levenshtein(std::string_view x, std::string_view y) {
  if (x.size() > y.size()) std::swap(x, y);
  std::vector<size_t> prev(x.size() + 1);
  std::vector<size_t> curr(x.size() + 1);
  for (size_t i = 0; i <= x.size(); ++i) prev[i] = i;
  for (size_t j = 1; j <= y.size(); ++j) {
    curr[0] = j;
    for (size_t i = 1; i <= x.size(); ++i) {
      const size_t subst = prev[i - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      curr[i] = std::min({prev[i] + 1, curr[i - 1] + 1, subst});
    }
    std::swap(prev, curr);
  }
  return prev[x.size()];
}

// 1 - lev/max(|x|,|y|). Two empty strings are identical by definition.
inline double edit_similarity(std::string_view x, std::string_view y) {
  if (x.empty() && y.empty()) return 1.0;
  const auto longest = std::max(x.size(), y.size());
  return 1.0 - static_cast<double>(levenshtein(x, y)) /
                   static_cast<double>(longest);
}

namespace detail {

struct MatchBlock {
  size_t x_start = 0;
  size_t y_start = 0;
  size_t length = 0;
};

// Longest common contiguous block; ties go to the earliest start in x, then
// in y. O(|x|*|y|) table walk, fine for name-length strings.
inline MatchBlock longest_match(std::string_view x, std::string_view y) {
  MatchBlock best;
  std::vector<size_t> prev(y.size() + 1, 0);
  std::vector<size_t> curr(y.size() + 1, 0);
  for (size_t i = 1; i <= x.size(); ++i) {
    for (size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1]) {
        curr[j] = prev[j - 1] + 1;
        if (curr[j] > best.length) {
          best.length = curr[j];
          best.x_start = i - curr[j];
          best.y_start = j - curr[j];
        }
      } else {
        curr[j] = 0;
      }
    }
    std::swap(prev, curr);
  }
  return best;
}

inline size_t matched_chars(std::string_view x, std::string_view y) {
  if (x.empty() || y.empty()) return 0;
  const auto block = longest_match(x, y);
  if (block.length == 0) return 0;
  return block.length +
         matched_chars(x.substr(0, block.x_start), y.substr(0, block.y_start)) +
         matched_chars(x.substr(block.x_start + block.length),
                       y.substr(block.y_start + block.length));
}

}  // namespace detail

// Matching-blocks ratio 2M/(|x|+|y|): M counts characters covered by
// recursively chosen longest common contiguous blocks. Arguments are
// ordered internally (shorter, then lexicographically smaller, first) so
// that tie-breaking between equal-length blocks cannot make the score
// order-dependent.
inline double ratio(std::string_view x, std::string_view y) {
  if (x.empty() && y.empty()) return 1.0;
  if (y.size() < x.size() || (y.size() == x.size() && y < x)) std::swap(x, y);
  const auto m = detail::matched_chars(x, y);
  return 2.0 * static_cast<double>(m) /
         static_cast<double>(x.size() + y.size());
}

// Best-partial heuristic: with X the shorter string of length m, the maximum
// ratio between X and every length-m contiguous substring of the longer
// string. Deliberately exhaustive over all substrings.
inline double partial_ratio(std::string_view x, std::string_view y) {
  if (x.empty() && y.empty()) return 1.0;
  if (x.size() > y.size()) std::swap(x, y);
  const size_t m = x.size();
  double best = 0.0;
  for (size_t start = 0; start + m <= y.size(); ++start) {
    best = std::max(best, ratio(x, y.substr(start, m)));
  }
  return best;
}

enum class BaselineMetric { kEdit, kRatio, kPartial, kRandom };

inline const char* baseline_metric_name(BaselineMetric m) {
  switch (m) {
    case BaselineMetric::kEdit: return "edit";
    case BaselineMetric::kRatio: return "ratio";
    case BaselineMetric::kPartial: return "partial";
    case BaselineMetric::kRandom: return "random";
  }
  return "?";
}

namespace detail {

inline uint64_t fnv1a64(std::string_view s, uint64_t h = 14695981039346656037ull) {
  for (char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Seed-deterministic pseudo-random score in [0,1), independent per
// (query, canonical) pair so the random baseline re-rolls for every query.
inline double random_score(uint64_t seed, std::string_view query_key,
                           std::string_view canonical_key) {
  uint64_t h = fnv1a64(query_key);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(canonical_key, h);
  Rng rng(h ^ seed);
  return rng.next_double();
}

}  // namespace detail

inline double baseline_score(BaselineMetric metric, const NormalizedName& query,
                             const NormalizedName& canonical, uint64_t seed) {
  switch (metric) {
    case BaselineMetric::kEdit:
      return edit_similarity(query.key, canonical.key);
    case BaselineMetric::kRatio:
      return ratio(query.key, canonical.key);
    case BaselineMetric::kPartial:
      return partial_ratio(query.key, canonical.key);
    case BaselineMetric::kRandom:
      return detail::random_score(seed, query.key, canonical.key);
  }
  throw std::invalid_argument("unknown baseline metric");
}

struct ScoredName {
  NormalizedName canonical;
  double score = 0.0;
};

// Top-min(k,N) canonicals by descending score, ties by ascending key.
inline std::vector<ScoredName> baseline_rank(
    const NormalizedName& query, const std::vector<NormalizedName>& canonicals,
    BaselineMetric metric, size_t k, uint64_t seed = 0) {
  if (canonicals.empty()) {
    throw std::invalid_argument("baseline_rank: canonical list is empty");
  }
  if (k == 0) throw std::invalid_argument("baseline_rank: k must be >= 1");
  std::vector<ScoredName> scored;
  scored.reserve(canonicals.size());
  for (const auto& c : canonicals) {
    scored.push_back({c, baseline_score(metric, query, c, seed)});
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredName& a, const ScoredName& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.canonical.key < b.canonical.key;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace cem
