#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "cem/baselines.hpp"
#include "cem/corpus.hpp"
#include "cem/errors.hpp"
#include "cem/index.hpp"
#include "cem/model.hpp"
#include "cem/rng.hpp"

namespace cem {

// 1 iff the tagged canonical's key appears within the first min(k, |ranked|)
// entries.
inline int success_at_k(const std::string& tagged_canonical_key,
                        const MatchResult& ranked, size_t k) {
  if (k == 0) throw std::invalid_argument("success_at_k: k must be >= 1");
  const size_t limit = std::min(k, ranked.ranked.size());
  for (size_t i = 0; i < limit; ++i) {
    if (ranked.ranked[i].canonical.key == tagged_canonical_key) return 1;
  }
  return 0;
}

inline double avg_success(const std::vector<int>& results) {
  if (results.empty()) {
    throw std::invalid_argument("avg_success: empty result list");
  }
  double total = 0.0;
  for (int r : results) total += r;
  return total / static_cast<double>(results.size());
}

// Seed-deterministic partition of [0, count) into `folds` disjoint subsets
// whose sizes differ by at most one.
inline std::vector<std::vector<size_t>> kfold_indices(size_t count,
                                                      size_t folds,
                                                      uint64_t seed) {
  if (folds == 0) throw std::invalid_argument("kfold: folds must be >= 1");
  if (count < folds) {
    throw DataError("kfold: need at least " + std::to_string(folds) +
                    " items, have " + std::to_string(count));
  }
  std::vector<size_t> order(count);
  for (size_t i = 0; i < count; ++i) order[i] = i;
  Rng rng(derive_seed(seed, 0xf01d));
  deterministic_shuffle(order, rng);

  std::vector<std::vector<size_t>> out(folds);
  const size_t base = count / folds;
  const size_t extra = count % folds;
  size_t cursor = 0;
  for (size_t f = 0; f < folds; ++f) {
    const size_t size = base + (f < extra ? 1 : 0);
    out[f].assign(order.begin() + static_cast<long>(cursor),
                  order.begin() + static_cast<long>(cursor + size));
    cursor += size;
  }
  return out;
}

// Two-sided paired Student's t over elementwise differences. Zero-variance
// differences are degenerate: p = 1 when the mean difference is 0, else 0.
inline double paired_t_test(const std::vector<double>& a,
                            const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_t_test: length mismatch");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("paired_t_test: need at least 2 samples");
  }
  const size_t n = a.size();
  std::vector<double> diff(n);
  for (size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double d : diff) var += (d - mean) * (d - mean);
  var /= static_cast<double>(n - 1);
  if (var == 0.0) return mean == 0.0 ? 1.0 : 0.0;
  const double t = mean / std::sqrt(var / static_cast<double>(n));
  boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
  return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

enum class Method { kRandom, kEdit, kRatio, kPartial, kEmbed };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kRandom: return "random";
    case Method::kEdit: return "edit";
    case Method::kRatio: return "ratio";
    case Method::kPartial: return "partial";
    case Method::kEmbed: return "embed";
  }
  return "?";
}

inline Method parse_method(const std::string& name) {
  if (name == "random") return Method::kRandom;
  if (name == "edit") return Method::kEdit;
  if (name == "ratio") return Method::kRatio;
  if (name == "partial") return Method::kPartial;
  if (name == "embed") return Method::kEmbed;
  throw DataError("unknown method: '" + name +
                  "' (expected random, edit, ratio, partial or embed)");
}

struct MethodScores {
  Method method = Method::kRandom;
  // avg[ki] is the item-weighted grand mean for ks[ki]; fold_scores[ki][f]
  // the per-fold means.
  std::vector<double> avg;
  std::vector<std::vector<double>> fold_scores;
};

struct EvalReport {
  std::vector<int> ks;
  size_t folds = 0;
  size_t items = 0;
  uint64_t seed = 0;
  std::vector<MethodScores> methods;
  // p_values[ki][i][j] between methods i and j for ks[ki]; diagonal 1.
  std::vector<std::vector<std::vector<double>>> p_values;

  double avg_success_at(Method m, int k) const {
    for (const auto& ms : methods) {
      if (ms.method != m) continue;
      for (size_t ki = 0; ki < ks.size(); ++ki) {
        if (ks[ki] == k) return ms.avg[ki];
      }
    }
    throw std::invalid_argument("avg_success_at: method/k not in report");
  }
};

// Ranks every ground-truth synonym against all canonicals with every
// requested method, scores Success@k per item, and aggregates per fold.
// Folds partition the (synonym -> canonical) evaluation items; the grand
// mean is item-weighted so unequal fold sizes stay exact.
inline EvalReport compare(const std::vector<Method>& methods,
                          const GroundTruth& gt, const ModelParams* model,
                          const std::vector<int>& ks = {1, 2, 3},
                          size_t folds = 10, uint64_t seed = 0) {
  if (gt.entries.empty()) throw DataError("compare: ground truth is empty");
  if (methods.empty()) throw std::invalid_argument("compare: no methods");
  if (ks.empty()) throw std::invalid_argument("compare: no ks");
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("compare: k must be >= 1");
  }

  struct Item {
    NormalizedName synonym;
    std::string canonical_key;
  };
  std::vector<Item> items;
  for (const auto& entry : gt.entries) {
    for (const auto& syn : entry.synonyms) {
      items.push_back({syn, entry.canonical.key});
    }
  }
  const auto canonicals = gt.canonicals();
  const size_t max_k = static_cast<size_t>(*std::max_element(ks.begin(), ks.end()));

  const bool wants_embed =
      std::find(methods.begin(), methods.end(), Method::kEmbed) != methods.end();
  if (wants_embed && model == nullptr) {
    throw DataError("compare: embed method requested but no model given");
  }
  VectorIndex index;
  if (wants_embed) index = build_index(*model, canonicals);

  const auto fold_sets = kfold_indices(items.size(), folds, seed);

  EvalReport report;
  report.ks = ks;
  report.folds = folds;
  report.items = items.size();
  report.seed = seed;

  // success[mi][ki][item]
  std::vector<std::vector<std::vector<int>>> success(
      methods.size(),
      std::vector<std::vector<int>>(ks.size(), std::vector<int>(items.size())));

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    const Method method = methods[mi];
    for (size_t ii = 0; ii < items.size(); ++ii) {
      const auto& item = items[ii];
      MatchResult ranked;
      if (method == Method::kEmbed) {
        ranked = query(index, encode(*model, item.synonym), max_k);
      } else {
        BaselineMetric metric = BaselineMetric::kRandom;
        if (method == Method::kEdit) metric = BaselineMetric::kEdit;
        if (method == Method::kRatio) metric = BaselineMetric::kRatio;
        if (method == Method::kPartial) metric = BaselineMetric::kPartial;
        const auto scored = baseline_rank(item.synonym, canonicals, metric,
                                          max_k, derive_seed(seed, 0xd1ce));
        for (const auto& s : scored) {
          ranked.ranked.push_back({s.canonical, 1.0 - s.score});
        }
      }
      for (size_t ki = 0; ki < ks.size(); ++ki) {
        success[mi][ki][ii] =
            success_at_k(item.canonical_key, ranked,
                         static_cast<size_t>(ks[ki]));
      }
    }
  }

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    MethodScores scores;
    scores.method = methods[mi];
    scores.avg.resize(ks.size());
    scores.fold_scores.assign(ks.size(), std::vector<double>(folds, 0.0));
    for (size_t ki = 0; ki < ks.size(); ++ki) {
      double total = 0.0;
      for (size_t f = 0; f < folds; ++f) {
        double fold_total = 0.0;
        for (size_t idx : fold_sets[f]) fold_total += success[mi][ki][idx];
        scores.fold_scores[ki][f] =
            fold_sets[f].empty()
                ? 0.0
                : fold_total / static_cast<double>(fold_sets[f].size());
        total += fold_total;
      }
      scores.avg[ki] = total / static_cast<double>(items.size());
    }
    report.methods.push_back(std::move(scores));
  }

  report.p_values.assign(
      ks.size(), std::vector<std::vector<double>>(
                     methods.size(), std::vector<double>(methods.size(), 1.0)));
  for (size_t ki = 0; ki < ks.size(); ++ki) {
    for (size_t i = 0; i < methods.size(); ++i) {
      for (size_t j = i + 1; j < methods.size(); ++j) {
        const double p = paired_t_test(report.methods[i].fold_scores[ki],
                                       report.methods[j].fold_scores[ki]);
        report.p_values[ki][i][j] = p;
        report.p_values[ki][j][i] = p;
      }
    }
  }
  return report;
}

namespace detail {

inline std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["items"] = report.items;
  j["folds"] = report.folds;
  j["seed"] = report.seed;
  j["ks"] = report.ks;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const auto& ms : report.methods) {
    nlohmann::ordered_json m;
    m["method"] = method_name(ms.method);
    nlohmann::ordered_json per_k = nlohmann::ordered_json::array();
    for (size_t ki = 0; ki < report.ks.size(); ++ki) {
      nlohmann::ordered_json entry;
      entry["k"] = report.ks[ki];
      entry["avg_success"] = ms.avg[ki];
      entry["fold_scores"] = ms.fold_scores[ki];
      per_k.push_back(std::move(entry));
    }
    m["scores"] = std::move(per_k);
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  nlohmann::ordered_json pvals = nlohmann::ordered_json::array();
  for (size_t ki = 0; ki < report.ks.size(); ++ki) {
    for (size_t i = 0; i < report.methods.size(); ++i) {
      for (size_t bj = i + 1; bj < report.methods.size(); ++bj) {
        nlohmann::ordered_json entry;
        entry["k"] = report.ks[ki];
        entry["a"] = method_name(report.methods[i].method);
        entry["b"] = method_name(report.methods[bj].method);
        entry["p_value"] = report.p_values[ki][i][bj];
        pvals.push_back(std::move(entry));
      }
    }
  }
  j["p_values"] = std::move(pvals);
  return j;
}

inline void write_report_json(const EvalReport& report,
                              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report: " + path);
  out << report_to_json(report).dump(2) << '\n';
}

// Flat `method<TAB>k<TAB>avg_success` summary for plotting.
inline void write_report_summary(const EvalReport& report,
                                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write summary: " + path);
  for (const auto& ms : report.methods) {
    for (size_t ki = 0; ki < report.ks.size(); ++ki) {
      out << method_name(ms.method) << '\t' << report.ks[ki] << '\t'
          << detail::format_score(ms.avg[ki]) << '\n';
    }
  }
}

}  // namespace cem
