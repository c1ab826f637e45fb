#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cem/corpus.hpp"
#include "cem/errors.hpp"
#include "cem/fingerprint.hpp"
#include "cem/names.hpp"
#include "cem/rng.hpp"

namespace cem {

// All names seen under one fingerprint, deduplicated by key (first display
// wins) and sorted by key.
struct FingerprintGroup {
  std::string fingerprint;
  std::vector<NormalizedName> names;
};

// Unordered pair of distinct names, stored with a.key < b.key so that the
// same pair is always represented the same way.
struct SynonymPair {
  NormalizedName a;
  NormalizedName b;

  friend bool operator==(const SynonymPair&, const SynonymPair&) = default;
};

inline SynonymPair make_synonym_pair(NormalizedName x, NormalizedName y) {
  if (x.key == y.key) {
    throw std::invalid_argument("synonym pair members must differ: " + x.key);
  }
  if (y.key < x.key) std::swap(x, y);
  return SynonymPair{std::move(x), std::move(y)};
}

using FingerprintRecord = std::pair<JobFingerprint, NormalizedName>;

// Accumulates (fingerprint, name) records into groups. Output is ordered by
// fingerprint so repeated runs over the same data produce identical files.
class FingerprintGrouper {
 public:
  void add(const JobFingerprint& fp, const NormalizedName& name) {
    auto& group = groups_[fp.digest_hex];
    if (group.count(name.key) == 0) group.emplace(name.key, name.display);
  }

  std::vector<FingerprintGroup> finish() const {
    std::vector<FingerprintGroup> out;
    out.reserve(groups_.size());
    for (const auto& [fp, names] : groups_) {
      FingerprintGroup g;
      g.fingerprint = fp;
      for (const auto& [key, display] : names) {
        g.names.push_back(NormalizedName{display, key});
      }
      out.push_back(std::move(g));
    }
    return out;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> groups_;
};

inline std::vector<FingerprintGroup> group_by_fingerprint(
    const std::vector<FingerprintRecord>& records) {
  FingerprintGrouper grouper;
  for (const auto& [fp, name] : records) grouper.add(fp, name);
  return grouper.finish();
}

// Staffing and recruitment agencies post their customers' ads under their
// own name; names containing these substrings are dropped wholesale.
inline const std::vector<std::string>& default_agency_substrings() {
  static const std::vector<std::string> kSubstrings = {"staff", "recruit",
                                                       "jobs", "unknown"};
  return kSubstrings;
}

// Naive containment over the already-lowercased key ("jobson" matches
// "jobs").
inline bool is_agency_name(const std::string& key,
                           const std::vector<std::string>& substrings =
                               default_agency_substrings()) {
  for (const auto& s : substrings) {
    if (!s.empty() && key.find(s) != std::string::npos) return true;
  }
  return false;
}

inline FingerprintGroup filter_agency_names(
    const FingerprintGroup& group,
    const std::vector<std::string>& substrings = default_agency_substrings()) {
  FingerprintGroup out;
  out.fingerprint = group.fingerprint;
  for (const auto& name : group.names) {
    if (!is_agency_name(name.key, substrings)) out.names.push_back(name);
  }
  return out;
}

// Ad / fingerprint / distinct-name counts, before or after agency filtering.
struct CorpusCounts {
  size_t ads = 0;
  size_t fingerprints = 0;
  size_t names = 0;
};

inline CorpusCounts count_corpus(
    const std::vector<FingerprintRecord>& records,
    const std::vector<std::string>* filter_substrings = nullptr) {
  CorpusCounts counts;
  std::set<std::string> fps;
  std::set<std::string> keys;
  for (const auto& [fp, name] : records) {
    if (filter_substrings && is_agency_name(name.key, *filter_substrings)) {
      continue;
    }
    ++counts.ads;
    fps.insert(fp.digest_hex);
    keys.insert(name.key);
  }
  counts.fingerprints = fps.size();
  counts.names = keys.size();
  return counts;
}

// All unordered pairs within each group of size >= 2, deduplicated across
// groups (two names sharing several fingerprints still yield one pair).
// Output sorted by (a.key, b.key); the first-seen displays win.
inline std::vector<SynonymPair> make_pairs(
    const std::vector<FingerprintGroup>& groups) {
  std::map<std::pair<std::string, std::string>, SynonymPair> dedup;
  for (const auto& group : groups) {
    for (size_t i = 0; i < group.names.size(); ++i) {
      for (size_t j = i + 1; j < group.names.size(); ++j) {
        auto pair = make_synonym_pair(group.names[i], group.names[j]);
        dedup.try_emplace({pair.a.key, pair.b.key}, std::move(pair));
      }
    }
  }
  std::vector<SynonymPair> out;
  out.reserve(dedup.size());
  for (auto& [_, pair] : dedup) out.push_back(std::move(pair));
  return out;
}

struct ExclusionResult {
  std::vector<SynonymPair> pairs;
  size_t removed_pairs = 0;
  // Distinct keys that caused removals, i.e. pair members present in the
  // evaluation set.
  size_t overlapping_names = 0;
};

// Drops any pair touching a name that also appears in the evaluation ground
// truth, so the model is never trained on what it is measured against.
inline ExclusionResult exclude_eval_overlap(
    const std::vector<SynonymPair>& pairs, const GroundTruth& gt) {
  ExclusionResult result;
  std::set<std::string> overlap;
  for (const auto& pair : pairs) {
    const bool hit_a = gt.contains_key(pair.a.key);
    const bool hit_b = gt.contains_key(pair.b.key);
    if (hit_a || hit_b) {
      ++result.removed_pairs;
      if (hit_a) overlap.insert(pair.a.key);
      if (hit_b) overlap.insert(pair.b.key);
    } else {
      result.pairs.push_back(pair);
    }
  }
  result.overlapping_names = overlap.size();
  return result;
}

struct SplitDataset {
  std::vector<SynonymPair> train;
  std::vector<SynonymPair> test;
  uint64_t seed = 0;
};

// Deterministic shuffle keyed by seed, then first ~90% to train; the test
// share is round(total/10) exactly.
inline SplitDataset split_pairs(std::vector<SynonymPair> pairs, uint64_t seed) {
  if (pairs.size() < 2) {
    throw DataError("split: need at least 2 pairs, have " +
                    std::to_string(pairs.size()));
  }
  Rng rng(derive_seed(seed, 0x5e117));
  deterministic_shuffle(pairs, rng);
  const auto test_size = static_cast<size_t>(
      std::llround(static_cast<double>(pairs.size()) / 10.0));
  SplitDataset split;
  split.seed = seed;
  split.train.assign(pairs.begin(), pairs.end() - static_cast<long>(test_size));
  split.test.assign(pairs.end() - static_cast<long>(test_size), pairs.end());
  return split;
}

// Name-disjoint variant for leakage-sensitive experiments: names are split
// 9:1 and a pair goes to the side owning both its members; mixed pairs are
// dropped, so sizes are only approximately 9:1.
inline SplitDataset split_pairs_by_name(const std::vector<SynonymPair>& pairs,
                                        uint64_t seed) {
  if (pairs.size() < 2) {
    throw DataError("split: need at least 2 pairs, have " +
                    std::to_string(pairs.size()));
  }
  std::set<std::string> key_set;
  for (const auto& p : pairs) {
    key_set.insert(p.a.key);
    key_set.insert(p.b.key);
  }
  std::vector<std::string> keys(key_set.begin(), key_set.end());
  Rng rng(derive_seed(seed, 0x5e117));
  deterministic_shuffle(keys, rng);
  const auto test_names = static_cast<size_t>(
      std::llround(static_cast<double>(keys.size()) / 10.0));
  std::set<std::string> test_set(keys.end() - static_cast<long>(test_names),
                                 keys.end());
  SplitDataset split;
  split.seed = seed;
  for (const auto& p : pairs) {
    const bool a_test = test_set.count(p.a.key) != 0;
    const bool b_test = test_set.count(p.b.key) != 0;
    if (!a_test && !b_test) {
      split.train.push_back(p);
    } else if (a_test && b_test) {
      split.test.push_back(p);
    }
  }
  return split;
}

// Pairs file: one `a_key<TAB>b_key<TAB>a_display<TAB>b_display` per line.
// Displays never contain tabs or newlines (whitespace runs are collapsed at
// normalization).
inline void write_pairs_file(const std::string& path,
                             const std::vector<SynonymPair>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write pairs file: " + path);
  for (const auto& p : pairs) {
    out << p.a.key << '\t' << p.b.key << '\t' << p.a.display << '\t'
        << p.b.display << '\n';
  }
}

inline std::vector<SynonymPair> read_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pairs file: " + path);
  std::vector<SynonymPair> pairs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 4) {
      throw DataError("pairs file " + path + ": line " +
                      std::to_string(lineno) + " has " +
                      std::to_string(cols.size()) + " columns, expected 4");
    }
    pairs.push_back(SynonymPair{NormalizedName{cols[2], cols[0]},
                                NormalizedName{cols[3], cols[1]}});
  }
  return pairs;
}

}  // namespace cem
