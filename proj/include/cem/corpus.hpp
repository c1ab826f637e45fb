#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "cem/errors.hpp"
#include "cem/names.hpp"

namespace cem {

// One job posting. Location fields are carried through for completeness but
// matching never uses anything besides the company name.
struct JobAd {
  std::string title;
  std::string description;
  std::string company_name_raw;
  std::optional<std::string> country;
  std::optional<std::string> state;
  std::optional<std::string> city;
  std::optional<std::string> zip;

  friend bool operator==(const JobAd&, const JobAd&) = default;
};

namespace detail {

inline bool blank(const std::string& s) {
  for (char c : s) {
    if (!is_ascii_space(c)) return false;
  }
  return true;
}

}  // namespace detail

// Parses one line of the line-delimited corpus format. Returns nullopt for
// anything that is not a record: invalid JSON, missing or non-string
// required fields, empty description, company name that trims to nothing.
inline std::optional<JobAd> parse_job_ad(const std::string& line) {
  const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return std::nullopt;
  const auto get_string = [&](const char* field) -> std::optional<std::string> {
    const auto it = j.find(field);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  JobAd ad;
  auto title = get_string("title");
  auto description = get_string("description");
  auto company = get_string("company_name");
  if (!title || !description || !company) return std::nullopt;
  if (description->empty() || detail::blank(*company)) return std::nullopt;
  ad.title = std::move(*title);
  ad.description = std::move(*description);
  ad.company_name_raw = std::move(*company);
  ad.country = get_string("country");
  ad.state = get_string("state");
  ad.city = get_string("city");
  ad.zip = get_string("zip");
  return ad;
}

inline std::string serialize_job_ad(const JobAd& ad) {
  nlohmann::ordered_json j;
  j["title"] = ad.title;
  j["description"] = ad.description;
  j["company_name"] = ad.company_name_raw;
  if (ad.country) j["country"] = *ad.country;
  if (ad.state) j["state"] = *ad.state;
  if (ad.city) j["city"] = *ad.city;
  if (ad.zip) j["zip"] = *ad.zip;
  return j.dump();
}

// Streaming reader over a line-delimited corpus file. Malformed lines are
// skipped and counted, never fatal; an unreadable file is.
class JobAdReader {
 public:
  explicit JobAdReader(const std::string& path) : in_(path) {
    if (!in_) throw DataError("cannot open job-ad corpus: " + path);
  }

  std::optional<JobAd> next() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto ad = parse_job_ad(line);
      if (ad) return ad;
      ++skipped_;
    }
    return std::nullopt;
  }

  size_t skipped() const { return skipped_; }

 private:
  std::ifstream in_;
  size_t skipped_ = 0;
};

struct LoadedAds {
  std::vector<JobAd> ads;
  size_t skipped = 0;
};

inline LoadedAds load_job_ads(const std::string& path) {
  JobAdReader reader(path);
  LoadedAds result;
  while (auto ad = reader.next()) {
    result.ads.push_back(std::move(*ad));
  }
  result.skipped = reader.skipped();
  return result;
}

// Evaluation ground truth: canonical names, each with its synonym list.
struct GroundTruthEntry {
  NormalizedName canonical;
  std::vector<NormalizedName> synonyms;
};

struct GroundTruth {
  std::vector<GroundTruthEntry> entries;
  // Every canonical and synonym key; used for training-set exclusion.
  std::unordered_set<std::string> keys;

  bool contains_key(const std::string& key) const {
    return keys.count(key) != 0;
  }

  std::vector<NormalizedName> canonicals() const {
    std::vector<NormalizedName> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.canonical);
    return out;
  }

  size_t synonym_count() const {
    size_t n = 0;
    for (const auto& e : entries) n += e.synonyms.size();
    return n;
  }

  double mean_synonyms() const {
    return entries.empty()
               ? 0.0
               : static_cast<double>(synonym_count()) /
                     static_cast<double>(entries.size());
  }
};

// Builds a GroundTruth from raw (canonical, synonyms) strings, normalizing
// everything and enforcing the structural invariants: canonical keys
// pairwise distinct, at least one synonym per entry, and no name key shared
// between two different canonicals.
inline GroundTruth make_ground_truth(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& raw) {
  GroundTruth gt;
  std::unordered_map<std::string, std::string> owner;  // key -> canonical key
  for (const auto& [canonical_raw, synonyms_raw] : raw) {
    GroundTruthEntry entry;
    entry.canonical = normalize_name(canonical_raw);
    if (synonyms_raw.empty()) {
      throw DataError("ground truth entry has no synonyms: " +
                      entry.canonical.display);
    }
    for (const auto& e : gt.entries) {
      if (e.canonical.key == entry.canonical.key) {
        throw DataError("duplicate canonical in ground truth: " +
                        entry.canonical.display);
      }
    }
    const auto claim = [&](const std::string& key) {
      auto [it, inserted] = owner.emplace(key, entry.canonical.key);
      if (!inserted && it->second != entry.canonical.key) {
        throw DataError("ground truth conflict: name '" + key +
                        "' is mapped to both '" + it->second + "' and '" +
                        entry.canonical.key + "'");
      }
    };
    claim(entry.canonical.key);
    for (const auto& raw_syn : synonyms_raw) {
      auto name = normalize_name(raw_syn);
      claim(name.key);
      entry.synonyms.push_back(std::move(name));
    }
    gt.entries.push_back(std::move(entry));
  }
  for (const auto& [key, _] : owner) gt.keys.insert(key);
  return gt;
}

// Loads the ground-truth file: a JSON array of
// {"canonical": text, "synonyms": [text, ...]} objects.
inline GroundTruth load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ground truth: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("ground truth is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_array()) throw DataError("ground truth must be a JSON array");
  std::vector<std::pair<std::string, std::vector<std::string>>> raw;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("canonical") ||
        !item.contains("synonyms") || !item["canonical"].is_string() ||
        !item["synonyms"].is_array()) {
      throw DataError("ground truth entry must be {canonical, synonyms[]}");
    }
    std::vector<std::string> synonyms;
    for (const auto& s : item["synonyms"]) {
      if (!s.is_string()) throw DataError("ground truth synonym must be text");
      synonyms.push_back(s.get<std::string>());
    }
    raw.emplace_back(item["canonical"].get<std::string>(), std::move(synonyms));
  }
  return make_ground_truth(raw);
}

}  // namespace cem
