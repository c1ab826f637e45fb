// cem: company entity matching pipeline.
//
//   ingest          validate a raw job-ad corpus, keep a skip count
//   fingerprint     digest job descriptions into content fingerprints
//   mine            group by fingerprint, filter agencies, emit synonym
//                   pairs, split train/test
//   train           fit the name-embedding model on synonym pairs
//   index           encode canonical names into a vector index
//   match           rank canonical names for one query name
//   eval            Success@k comparison across matching methods
//   export-vectors  dump raw name vectors for external plotting
//
// Every subcommand writes a manifest (inputs, parameters, seed, counts,
// wall time) next to its primary output. Outputs are byte-reproducible for
// a fixed seed; manifests carry the only timestamps. Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cem/cem.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr uint64_t kDefaultSeed = 42;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_manifest(const std::string& path, ordered_json manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cem::DataError("cannot write manifest: " + path);
  out << manifest.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cem::DataError("cannot write output: " + path);
  return out;
}

std::vector<cem::NormalizedName> read_names_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cem::DataError("cannot open names file: " + path);
  std::vector<cem::NormalizedName> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (!cem::detail::is_ascii_space(c)) blank = false;
    }
    if (blank) continue;
    names.push_back(cem::normalize_name(line));
  }
  return names;
}

std::string format_distance(double d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", d);
  return buf;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOptions {
  std::string in;
  std::string out;
};

void run_ingest(const IngestOptions& opt) {
  Stopwatch watch;
  cem::JobAdReader reader(opt.in);
  auto out = open_output(opt.out);
  size_t written = 0;
  while (auto ad = reader.next()) {
    out << cem::serialize_job_ad(*ad) << '\n';
    ++written;
  }
  ordered_json manifest;
  manifest["command"] = "ingest";
  manifest["inputs"] = {{"corpus", opt.in}};
  manifest["counts"] = {{"records", written}, {"skipped", reader.skipped()}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);
  std::cerr << "ingest: " << written << " records, " << reader.skipped()
            << " skipped\n";
}

// ---------------------------------------------------------------------------
// fingerprint
// ---------------------------------------------------------------------------

struct FingerprintOptions {
  std::string in;
  std::string out;
  cem::WinnowParams params;
};

void run_fingerprint(const FingerprintOptions& opt) {
  Stopwatch watch;
  opt.params.validate();
  cem::JobAdReader reader(opt.in);
  auto out = open_output(opt.out);
  size_t written = 0;
  while (auto ad = reader.next()) {
    const auto fp = cem::fingerprint_job(ad->description, opt.params);
    const auto name = cem::normalize_name(ad->company_name_raw);
    out << fp.digest_hex << '\t' << name.key << '\t' << name.display << '\n';
    ++written;
  }
  ordered_json manifest;
  manifest["command"] = "fingerprint";
  manifest["inputs"] = {{"corpus", opt.in}};
  manifest["params"] = {{"kgram_len", opt.params.kgram_len},
                        {"window_len", opt.params.window_len},
                        {"base", opt.params.base},
                        {"modulo", opt.params.modulo}};
  manifest["counts"] = {{"records", written}, {"skipped", reader.skipped()}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);
  std::cerr << "fingerprint: " << written << " records, " << reader.skipped()
            << " skipped\n";
}

// ---------------------------------------------------------------------------
// mine
// ---------------------------------------------------------------------------

struct MineOptions {
  std::string in;
  std::string out_dir;
  std::string gt_path;
  std::vector<std::string> filter = cem::default_agency_substrings();
  uint64_t seed = kDefaultSeed;
  bool split_by_name = false;
};

std::vector<cem::FingerprintRecord> read_fingerprint_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cem::DataError("cannot open fingerprint file: " + path);
  std::vector<cem::FingerprintRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw cem::DataError("fingerprint file " + path + ": line " +
                           std::to_string(lineno) + " is not 3 columns");
    }
    records.push_back({cem::JobFingerprint{line.substr(0, t1)},
                       cem::NormalizedName{line.substr(t2 + 1),
                                           line.substr(t1 + 1, t2 - t1 - 1)}});
  }
  return records;
}

void run_mine(const MineOptions& opt) {
  Stopwatch watch;
  fs::create_directories(opt.out_dir);
  const auto records = read_fingerprint_file(opt.in);
  const auto before = cem::count_corpus(records);
  const auto after = cem::count_corpus(records, &opt.filter);

  size_t multi_name_before = 0;
  size_t multi_name_after = 0;
  std::vector<cem::FingerprintGroup> filtered;
  for (const auto& group : cem::group_by_fingerprint(records)) {
    if (group.names.size() >= 2) ++multi_name_before;
    auto kept = cem::filter_agency_names(group, opt.filter);
    if (kept.names.size() >= 2) ++multi_name_after;
    filtered.push_back(std::move(kept));
  }
  auto pairs = cem::make_pairs(filtered);
  const size_t pairs_mined = pairs.size();

  size_t removed_pairs = 0;
  size_t overlapping_names = 0;
  if (!opt.gt_path.empty()) {
    const auto gt = cem::load_ground_truth(opt.gt_path);
    auto excluded = cem::exclude_eval_overlap(pairs, gt);
    removed_pairs = excluded.removed_pairs;
    overlapping_names = excluded.overlapping_names;
    pairs = std::move(excluded.pairs);
  }

  const auto dir = fs::path(opt.out_dir);
  cem::write_pairs_file((dir / "pairs.tsv").string(), pairs);
  const auto split = opt.split_by_name ? cem::split_pairs_by_name(pairs, opt.seed)
                                       : cem::split_pairs(pairs, opt.seed);
  cem::write_pairs_file((dir / "train.pairs").string(), split.train);
  cem::write_pairs_file((dir / "test.pairs").string(), split.test);

  ordered_json manifest;
  manifest["command"] = "mine";
  manifest["inputs"] = {{"fingerprints", opt.in},
                        {"ground_truth", opt.gt_path}};
  manifest["params"] = {{"filter_substrings", opt.filter},
                        {"split_by_name", opt.split_by_name}};
  manifest["seed"] = opt.seed;
  manifest["counts"] = {
      {"ads", before.ads},
      {"ads_after_filter", after.ads},
      {"fingerprints", before.fingerprints},
      {"fingerprints_after_filter", after.fingerprints},
      {"names", before.names},
      {"names_after_filter", after.names},
      {"fingerprints_with_multiple_names", multi_name_before},
      {"fingerprints_with_multiple_names_after_filter", multi_name_after},
      {"pairs_mined", pairs_mined},
      {"pairs_removed_by_eval_overlap", removed_pairs},
      {"names_overlapping_eval_set", overlapping_names},
      {"pairs", pairs.size()},
      {"train_pairs", split.train.size()},
      {"test_pairs", split.test.size()}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest((dir / "manifest.json").string(), manifest);
  std::cerr << "mine: " << before.fingerprints << " fingerprints ("
            << multi_name_before << " with >=2 names), " << pairs.size()
            << " pairs -> " << split.train.size() << " train / "
            << split.test.size() << " test\n";
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOptions {
  std::string pairs;
  std::string out;
  cem::ModelDims dims;
  cem::TrainConfig config;
  uint32_t out_dim_flag = 0;  // 0: default to encoder_dim
};

void run_train(const TrainOptions& opt) {
  Stopwatch watch;
  auto dims = opt.dims;
  dims.out_dim = opt.out_dim_flag != 0 ? opt.out_dim_flag : dims.encoder_dim;
  const auto pairs = cem::read_pairs_file(opt.pairs);
  const auto result = cem::train(pairs, opt.config, dims);
  cem::save_model(result.params, opt.out);

  ordered_json manifest;
  manifest["command"] = "train";
  manifest["inputs"] = {{"pairs", opt.pairs}};
  manifest["params"] = {{"buckets", dims.buckets},
                        {"embed_dim", dims.embed_dim},
                        {"encoder_dim", dims.encoder_dim},
                        {"out_dim", dims.out_dim},
                        {"learning_rate", opt.config.learning_rate},
                        {"batch_size", opt.config.batch_size},
                        {"epochs", opt.config.epochs},
                        {"margin", opt.config.margin},
                        {"negatives", opt.config.negatives}};
  manifest["seed"] = opt.config.seed;
  manifest["counts"] = {{"pairs", pairs.size()}};
  manifest["epoch_losses"] = result.epoch_losses;
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);
  std::cerr << "train: " << pairs.size() << " pairs, " << opt.config.epochs
            << " epochs, final loss "
            << (result.epoch_losses.empty() ? 0.0 : result.epoch_losses.back())
            << "\n";
}

// ---------------------------------------------------------------------------
// index
// ---------------------------------------------------------------------------

struct IndexOptions {
  std::string model;
  std::string gt_path;
  std::string names_path;
  std::string out;
};

void run_index(const IndexOptions& opt) {
  Stopwatch watch;
  if (opt.gt_path.empty() == opt.names_path.empty()) {
    throw std::invalid_argument("index: give exactly one of --gt or --names");
  }
  const auto params = cem::load_model(opt.model);
  std::vector<cem::NormalizedName> canonicals;
  if (!opt.gt_path.empty()) {
    canonicals = cem::load_ground_truth(opt.gt_path).canonicals();
  } else {
    canonicals = read_names_file(opt.names_path);
  }
  if (canonicals.empty()) throw cem::DataError("index: no canonical names");
  const auto index = cem::build_index(params, canonicals);
  cem::save_index(index, opt.out);

  ordered_json manifest;
  manifest["command"] = "index";
  manifest["inputs"] = {{"model", opt.model},
                        {"ground_truth", opt.gt_path},
                        {"names", opt.names_path}};
  manifest["counts"] = {{"canonicals", index.entries.size()},
                        {"dims", index.dims}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);
  std::cerr << "index: " << index.entries.size() << " canonical names\n";
}

// ---------------------------------------------------------------------------
// match
// ---------------------------------------------------------------------------

struct MatchOptions {
  std::string name;
  std::string index_path;
  std::string model;
  std::string metric = "embed";
  size_t k = 3;
  uint64_t seed = kDefaultSeed;
  std::string out;  // empty: stdout only
};

void run_match(const MatchOptions& opt) {
  Stopwatch watch;
  const auto index = cem::load_index(opt.index_path);
  const auto query_name = cem::normalize_name(opt.name);

  std::vector<std::pair<cem::NormalizedName, double>> ranked;  // (name, distance)
  if (opt.metric == "embed") {
    if (opt.model.empty()) {
      throw std::invalid_argument("match: --metric embed requires --model");
    }
    const auto params = cem::load_model(opt.model);
    if (params.dims.out_dim != index.dims) {
      throw cem::DataError("match: model and index dimensions differ");
    }
    const auto result =
        cem::query(index, cem::encode(params, query_name), opt.k);
    for (const auto& r : result.ranked) {
      ranked.emplace_back(r.canonical, r.distance);
    }
  } else {
    cem::BaselineMetric metric;
    if (opt.metric == "edit") {
      metric = cem::BaselineMetric::kEdit;
    } else if (opt.metric == "ratio") {
      metric = cem::BaselineMetric::kRatio;
    } else if (opt.metric == "partial") {
      metric = cem::BaselineMetric::kPartial;
    } else if (opt.metric == "random") {
      metric = cem::BaselineMetric::kRandom;
    } else {
      throw std::invalid_argument("match: unknown metric '" + opt.metric +
                                  "'");
    }
    std::vector<cem::NormalizedName> canonicals;
    canonicals.reserve(index.entries.size());
    for (const auto& e : index.entries) canonicals.push_back(e.canonical);
    const auto scored =
        cem::baseline_rank(query_name, canonicals, metric, opt.k, opt.seed);
    for (const auto& s : scored) {
      ranked.emplace_back(s.canonical, 1.0 - s.score);
    }
  }

  std::ostringstream lines;
  size_t rank = 1;
  for (const auto& [canonical, distance] : ranked) {
    lines << query_name.display << '\t' << rank << '\t' << canonical.display
          << '\t' << format_distance(distance) << '\n';
    ++rank;
  }
  std::cout << lines.str();
  if (!opt.out.empty()) {
    auto out = open_output(opt.out);
    out << lines.str();
    ordered_json manifest;
    manifest["command"] = "match";
    manifest["inputs"] = {{"index", opt.index_path}, {"model", opt.model}};
    manifest["params"] = {{"name", opt.name},
                          {"metric", opt.metric},
                          {"k", opt.k}};
    manifest["seed"] = opt.seed;
    manifest["counts"] = {{"results", ranked.size()}};
    manifest["wall_time_ms"] = watch.ms();
    write_manifest(opt.out + ".manifest.json", manifest);
  }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string gt_path;
  std::string model;
  std::vector<std::string> methods = {"random", "edit", "partial", "embed"};
  std::vector<int> ks = {1, 2, 3};
  size_t folds = 10;
  uint64_t seed = kDefaultSeed;
  std::string out;
  std::string summary;
};

void run_eval(const EvalOptions& opt) {
  Stopwatch watch;
  const auto gt = cem::load_ground_truth(opt.gt_path);
  std::vector<cem::Method> methods;
  for (const auto& m : opt.methods) methods.push_back(cem::parse_method(m));

  std::optional<cem::ModelParams> model;
  const bool wants_embed =
      std::find(methods.begin(), methods.end(), cem::Method::kEmbed) !=
      methods.end();
  if (wants_embed) {
    if (opt.model.empty()) {
      throw std::invalid_argument("eval: method 'embed' requires --model");
    }
    model = cem::load_model(opt.model);
  }

  const auto report = cem::compare(methods, gt, model ? &*model : nullptr,
                                   opt.ks, opt.folds, opt.seed);
  cem::write_report_json(report, opt.out);
  const auto summary_path =
      opt.summary.empty() ? opt.out + ".summary.tsv" : opt.summary;
  cem::write_report_summary(report, summary_path);

  ordered_json manifest;
  manifest["command"] = "eval";
  manifest["inputs"] = {{"ground_truth", opt.gt_path}, {"model", opt.model}};
  manifest["params"] = {{"methods", opt.methods},
                        {"ks", opt.ks},
                        {"folds", opt.folds}};
  manifest["seed"] = opt.seed;
  manifest["counts"] = {{"items", report.items},
                        {"canonicals", gt.entries.size()}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);

  for (const auto& ms : report.methods) {
    std::cerr << "eval: " << cem::method_name(ms.method);
    for (size_t ki = 0; ki < report.ks.size(); ++ki) {
      std::cerr << "  AvgSuccess@" << report.ks[ki] << "="
                << format_distance(ms.avg[ki]);
    }
    std::cerr << "\n";
  }
}

// ---------------------------------------------------------------------------
// export-vectors
// ---------------------------------------------------------------------------

struct ExportOptions {
  std::string model;
  std::string names_path;
  std::string out;
};

void run_export(const ExportOptions& opt) {
  Stopwatch watch;
  const auto params = cem::load_model(opt.model);
  const auto names = read_names_file(opt.names_path);
  if (names.empty()) throw cem::DataError("export-vectors: no names given");
  auto out = open_output(opt.out);
  for (const auto& name : names) {
    cem::NameVector v;
    try {
      v = cem::encode(params, name);
    } catch (const std::exception& e) {
      throw cem::DataError("export-vectors: cannot encode '" + name.display +
                           "': " + e.what());
    }
    out << name.key;
    char buf[40];
    for (double x : v) {
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out << '\t' << buf;
    }
    out << '\n';
  }
  ordered_json manifest;
  manifest["command"] = "export-vectors";
  manifest["inputs"] = {{"model", opt.model}, {"names", opt.names_path}};
  manifest["counts"] = {{"names", names.size()},
                        {"dims", params.dims.out_dim}};
  manifest["wall_time_ms"] = watch.ms();
  write_manifest(opt.out + ".manifest.json", manifest);
  std::cerr << "export-vectors: " << names.size() << " names\n";
}

void add_seed_option(CLI::App* cmd, uint64_t& seed) {
  cmd->add_option("--seed", seed, "deterministic seed")
      ->envname("CEM_SEED")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"company entity matching: mine synonym pairs from job ads, "
               "train a name embedding, rank canonical names"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read option values from a config file (flags win)");

  IngestOptions ingest_opt;
  auto* ingest = app.add_subcommand("ingest", "validate a raw job-ad corpus");
  ingest->add_option("--in", ingest_opt.in, "raw corpus (JSON lines)")
      ->required();
  ingest->add_option("--out", ingest_opt.out, "validated corpus")->required();

  FingerprintOptions fp_opt;
  auto* fingerprint =
      app.add_subcommand("fingerprint", "digest job descriptions");
  fingerprint->add_option("--in", fp_opt.in, "corpus (JSON lines)")->required();
  fingerprint->add_option("--out", fp_opt.out, "fingerprint TSV")->required();
  fingerprint->add_option("--kgram", fp_opt.params.kgram_len, "k-gram length")
      ->capture_default_str();
  fingerprint->add_option("--window", fp_opt.params.window_len, "window length")
      ->capture_default_str();
  fingerprint->add_option("--base", fp_opt.params.base, "rolling hash base")
      ->capture_default_str();
  fingerprint->add_option("--modulo", fp_opt.params.modulo, "hash modulo")
      ->capture_default_str();

  MineOptions mine_opt;
  auto* mine = app.add_subcommand("mine", "mine synonym pairs and split");
  mine->add_option("--in", mine_opt.in, "fingerprint TSV")->required();
  mine->add_option("--out-dir", mine_opt.out_dir, "output directory")
      ->required();
  mine->add_option("--gt", mine_opt.gt_path,
                   "ground truth whose names are excluded from pairs");
  mine->add_option("--filter", mine_opt.filter,
                   "agency substrings to filter")
      ->delimiter(',')
      ->capture_default_str();
  mine->add_flag("--split-by-name", mine_opt.split_by_name,
                 "name-disjoint 9:1 split instead of pair-level");
  add_seed_option(mine, mine_opt.seed);

  TrainOptions train_opt;
  train_opt.config.seed = kDefaultSeed;
  auto* train = app.add_subcommand("train", "train the name embedding");
  train->add_option("--pairs", train_opt.pairs, "training pairs TSV")
      ->required();
  train->add_option("--out", train_opt.out, "model file")->required();
  train->add_option("--buckets", train_opt.dims.buckets, "hash buckets")
      ->capture_default_str();
  train->add_option("--embed-dim", train_opt.dims.embed_dim,
                    "character embedding dimensions")
      ->capture_default_str();
  train->add_option("--encoder-dim", train_opt.dims.encoder_dim,
                    "sequence encoder dimensions")
      ->capture_default_str();
  train->add_option("--out-dim", train_opt.out_dim_flag,
                    "output dimensions (default: encoder dim)");
  train->add_option("--lr", train_opt.config.learning_rate, "learning rate")
      ->capture_default_str();
  train->add_option("--batch", train_opt.config.batch_size, "batch size")
      ->capture_default_str();
  train->add_option("--epochs", train_opt.config.epochs, "epochs")
      ->capture_default_str();
  train->add_option("--margin", train_opt.config.margin, "hinge margin")
      ->capture_default_str();
  train->add_option("--negatives", train_opt.config.negatives,
                    "negatives per anchor")
      ->capture_default_str();
  add_seed_option(train, train_opt.config.seed);

  IndexOptions index_opt;
  auto* index = app.add_subcommand("index", "build the canonical-name index");
  index->add_option("--model", index_opt.model, "model file")->required();
  index->add_option("--gt", index_opt.gt_path,
                    "ground truth providing canonical names");
  index->add_option("--names", index_opt.names_path,
                    "plain list of canonical names, one per line");
  index->add_option("--out", index_opt.out, "index file")->required();

  MatchOptions match_opt;
  auto* match = app.add_subcommand("match", "rank canonicals for one name");
  match->add_option("--name", match_opt.name, "query company name")->required();
  match->add_option("--index", match_opt.index_path, "index file")->required();
  match->add_option("--model", match_opt.model,
                    "model file (required for --metric embed)");
  match
      ->add_option("--metric", match_opt.metric,
                   "embed, edit, ratio, partial or random")
      ->capture_default_str();
  match->add_option("--k", match_opt.k, "how many canonicals to print")
      ->capture_default_str();
  match->add_option("--out", match_opt.out,
                    "also write the ranking (and a manifest) to a file");
  add_seed_option(match, match_opt.seed);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Success@k method comparison");
  eval->add_option("--gt", eval_opt.gt_path, "ground truth file")->required();
  eval->add_option("--model", eval_opt.model, "model file (for embed)");
  eval->add_option("--methods", eval_opt.methods, "methods to compare")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--ks", eval_opt.ks, "ranks to score")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--folds", eval_opt.folds, "cross-validation folds")
      ->capture_default_str();
  eval->add_option("--out", eval_opt.out, "report JSON")->required();
  eval->add_option("--summary", eval_opt.summary,
                   "flat method/k/avg_success TSV (default <out>.summary.tsv)");
  add_seed_option(eval, eval_opt.seed);

  ExportOptions export_opt;
  auto* exporter =
      app.add_subcommand("export-vectors", "dump raw name vectors");
  exporter->add_option("--model", export_opt.model, "model file")->required();
  exporter->add_option("--names", export_opt.names_path, "names, one per line")
      ->required();
  exporter->add_option("--out", export_opt.out, "vectors TSV")->required();

  try {
    app.parse(argc, argv);
    if (ingest->parsed()) run_ingest(ingest_opt);
    if (fingerprint->parsed()) run_fingerprint(fp_opt);
    if (mine->parsed()) run_mine(mine_opt);
    if (train->parsed()) run_train(train_opt);
    if (index->parsed()) run_index(index_opt);
    if (match->parsed()) run_match(match_opt);
    if (eval->parsed()) run_eval(eval_opt);
    if (exporter->parsed()) run_export(export_opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
